//! Encode, corrupt up to the guaranteed radius, and decode.
//!
//!     cargo run --example decode

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcode::constraints::ConstraintInstance;
use subcode::design::{design, SearchConfig};
use subcode::field::FieldPolicy;

fn main() -> subcode::Result<()> {
    let inst = ConstraintInstance::new(10, vec![vec![0, 1], vec![2], vec![5, 6]])?;
    let d = design(&inst, FieldPolicy::SmallestPrimePower, SearchConfig::default(), 9)?;
    let ctx = d.field();
    println!(
        "[{}, {}, {}] over GF({}), corrects {} errors",
        d.n(),
        d.k(),
        d.d(),
        ctx.order(),
        d.correctable()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let msg: Vec<_> = (0..d.k()).map(|_| ctx.random(&mut rng)).collect();
    let sent = d.encode(&msg)?;
    let mut received = sent.clone();
    for _ in 0..d.correctable() {
        let j = rng.gen_range(0..d.n());
        received[j] = ctx.add(received[j], ctx.one());
    }
    let enc = |v: &[subcode::field::FieldElement]| v.iter().map(|e| e.encoding()).collect::<Vec<_>>();
    println!("message  {:?}", enc(&msg));
    println!("sent     {:?}", enc(&sent));
    println!("received {:?}", enc(&received));
    println!("decoded  {:?}", enc(&d.decode(&received)?));

    // k < ell: the constant word is a parent Reed-Solomon codeword outside the subcode
    let small = design(
        &ConstraintInstance::new(5, vec![vec![0, 1]])?,
        FieldPolicy::SmallestPrimePower,
        SearchConfig::default(),
        1,
    )?;
    let ones = vec![small.field().one(); small.n()];
    match small.decode(&ones) {
        Ok(m) => println!("all-ones word decoded to {:?}", enc(&m)),
        Err(e) => println!("all-ones word (k = {}, ell = {}): {e}", small.k(), small.ell()),
    }
    Ok(())
}
