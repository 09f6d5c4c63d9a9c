//! The block matrix M, its determinant, and the polynomial relation that a
//! left kernel vector encodes.
//!
//!     cargo run --example sylvester_bridge

use subcode::constraints::GeneralInstance;
use subcode::field::{FieldContext, FieldPolicy};
use subcode::sylvester::{self, SylvesterMatrix};

fn main() -> subcode::Result<()> {
    let f = FieldContext::make_field(101, FieldPolicy::Forced(101))?;
    let alphas: Vec<_> = [3, 7, 12].iter().map(|&v| f.from_int(v)).collect();

    for (label, blocks) in [
        ("condition holds", vec![(vec![0, 1], 1), (vec![2], 1), (vec![], 1)]),
        ("duplicate blocks", vec![(vec![0], 1), (vec![0], 1), (vec![], 1)]),
    ] {
        let inst = GeneralInstance::new(3, blocks)?;
        let m = SylvesterMatrix::build(&inst, &alphas, &f)?;
        println!("{label}: {inst}");
        for row in m.matrix().to_rows() {
            println!("  {:?}", row.iter().map(|e| e.encoding()).collect::<Vec<_>>());
        }
        println!(
            "  det M = {}, block condition: {:?}",
            m.determinant(&f),
            inst.check_general()?
        );
        if let Some(y) = m.nullspace_vector(&f) {
            let ps = sylvester::block_polynomials(&inst, &alphas, &f)?;
            let qs = sylvester::vector_to_polys(&y, &inst)?;
            let sum = sylvester::combine(&ps, &qs, &f);
            println!(
                "  y M = 0 for y = {:?}; sum p_i q_i is zero: {}",
                y.iter().map(|e| e.encoding()).collect::<Vec<_>>(),
                sum.is_zero()
            );
        }
    }
    Ok(())
}
