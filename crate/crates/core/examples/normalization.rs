//! Prints the derived normalization constants and their small prime factors.

use ternforms::arith::trial_factor;
use ternforms::elimination::normalization_constant;

fn main() {
    let degrees: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let degrees = if degrees.is_empty() { vec![2, 3, 4] } else { degrees };
    for n in degrees {
        let c = normalization_constant(n).expect("derivation succeeds");
        let (primes, rest) = trial_factor(&c.value, 1000, &[]);
        println!("n={n} c={} primes={primes:?} cofactor={rest}", c.value);
    }
}
