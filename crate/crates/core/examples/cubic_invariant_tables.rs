//! Derives the degree-4 and degree-6 invariants of ternary cubics and prints
//! them as exponent tables over the ten coefficients
//! (x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3).
//!
//! Normalization: on `y^2 z - x^3 - a x z^2 - b z^3` the invariants are
//! `I = -3a` and `J = 27b`.

#[path = "../tests/support/invariant_kernel.rs"]
mod invariant_kernel;

fn main() {
    for (name, k, target) in [("I", 4, -3), ("J", 6, 27)] {
        let p = invariant_kernel::normalized_invariant(k, target);
        println!("// {name}: {} terms", p.len());
        for (m, c) in p.terms().rev() {
            println!("    ({c}, {:?}),", m.0);
        }
    }
}
