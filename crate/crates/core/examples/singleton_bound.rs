//! Any matrix with the prescribed zeros has distance at most n + 1 - ell;
//! random fillings stay below it, the designed code meets it.
//!
//!     cargo run --release --example singleton_bound

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subcode::constraints::ConstraintInstance;
use subcode::design::{design, SearchConfig};
use subcode::field::{FieldContext, FieldPolicy};
use subcode::oracle;

fn main() -> subcode::Result<()> {
    let inst = ConstraintInstance::new(7, vec![vec![0, 1, 2], vec![0, 1, 3], vec![4]])?;
    let bound = inst.singleton_bound()?;
    println!(
        "zero sets {:?}: ell = {}, bound {}",
        inst.set_lists(),
        bound.ell,
        bound.d_upper
    );

    let ctx = FieldContext::make_field(9, FieldPolicy::Forced(9))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut hist = [0usize; 8];
    for _ in 0..200 {
        let g = oracle::random_compliant_matrix(&inst, &ctx, &mut rng);
        hist[oracle::min_distance_bruteforce(&g, &ctx, None)?] += 1;
    }
    println!("random fillings over GF(9), distance histogram: {hist:?}");

    let d = design(&inst, FieldPolicy::SmallestPrimePower, SearchConfig::default(), 0)?;
    let dist = oracle::min_distance_bruteforce(d.generator(), d.field(), None)?;
    println!("designed code over GF({}): distance {dist}", d.field().order());
    Ok(())
}
