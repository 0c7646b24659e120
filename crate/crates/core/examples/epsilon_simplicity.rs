//! The simplicity criterion for F(P0 ⊗ M_w, C_eps), cross-checked against the
//! truncated closure oracle.

use witt_diamond::fock::{epsilon_simplicity, Coordinate, EpsilonVerdict, FModule, RModule, UbModule};
use witt_diamond::oracle::{truncated_closure, TruncationPolicy};
use witt_diamond::scalar::{frac, int};

fn main() {
    let policy = TruncationPolicy::new(5, 1, 40).unwrap();
    for eps in [frac(-3, 1), frac(1, 2), int(-5)] {
        let m = FModule::new(int(0), int(1), RModule::split(Coordinate::Weight(frac(1, 3)), int(2)).unwrap(), UbModule::OneDim(eps.clone())).unwrap();
        let verdict = epsilon_simplicity(&m).unwrap();
        let start = match &verdict {
            EpsilonVerdict::Simple => m.basis_vector(0, 0),
            EpsilonVerdict::NotSimple { generator, .. } => generator.clone(),
        };
        let closure = truncated_closure(&m, &start, policy).unwrap();
        println!("eps = {eps}: {verdict:?}");
        println!("  closure of {start}: {:?}, {} of {} monomials", closure.verdict, closure.reached, closure.ambient);
    }
}
