//! Every nonzero vector of Omega(lambda, alpha, beta, gamma, g) generates the
//! module: reduce to 1, then rebuild a monomial from 1.

use witt_diamond::module::LModule;
use witt_diamond::omega::{omega_generate, omega_reduce_to_one, OmegaModule, OmegaParams};
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::{frac, int};

fn main() {
    let g = SparsePoly::parse(&signature(vec![Var::poly("t")]), "t^2 - 1").unwrap();
    let m = OmegaModule::new(OmegaParams::new(frac(1, 2), int(3), int(1), int(2), g).unwrap());
    let v = SparsePoly::parse(&m.signature(), "s^2*t - 4s + t^3").unwrap();

    let down = omega_reduce_to_one(&m, &v).unwrap();
    println!("{}", m.name());
    for step in &down.steps {
        println!("  {}: -> {}", step.label, step.after);
    }
    println!("replay: {:?}", down.replay(&m));

    let up = omega_generate(&m, 2, 3).unwrap();
    println!("from 1 to {} in {} steps", up.result, up.steps.len());
}
