//! The truncated closure oracle on its own: generate from a vector under a
//! generator window and report whether the truncation fills up.

use witt_diamond::fock::{FModule, RModule, UbModule};
use witt_diamond::omega::{OmegaModule, OmegaParams};
use witt_diamond::oracle::{truncated_closure, TruncationPolicy};
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::{frac, int};

fn main() {
    let policy = TruncationPolicy::new(4, 1, 30).unwrap();

    let g = SparsePoly::parse(&signature(vec![Var::poly("t")]), "t").unwrap();
    let omega = OmegaModule::new(OmegaParams::new(int(1), int(2), int(0), int(3), g).unwrap());
    let r = truncated_closure(&omega, &omega.one(), policy).unwrap();
    println!("Omega from 1: {:?} ({} of {}, {} rounds)", r.verdict, r.reached, r.ambient, r.rounds);

    let f = FModule::new(int(0), int(1), RModule::weighted(frac(1, 2), int(1)), UbModule::OneDim(int(2))).unwrap();
    let r = truncated_closure(&f, &f.basis_vector(1, 2), policy).unwrap();
    println!("F from x0 x1^2: {:?} ({} of {}, overflow {})", r.verdict, r.reached, r.ambient, r.overflow);
}
