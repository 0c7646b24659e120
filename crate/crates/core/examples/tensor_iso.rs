//! Isomorphism of tensor products via the canonical (sorted) factor list.

use witt_diamond::omega::OmegaParams;
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::{frac, int};
use witt_diamond::tensor::{canonical_form, iso_check, r_g, TensorModule};

fn factor(lambda: i64, alpha: i64, g: &str) -> OmegaParams {
    let g = SparsePoly::parse(&signature(vec![Var::poly("t")]), g).unwrap();
    OmegaParams::new(int(alpha), frac(3, 2), int(0), int(lambda), g).unwrap()
}

fn main() {
    let a = TensorModule::new(vec![factor(1, 0, "t"), factor(4, 1, "t^2 + 1"), factor(-2, 2, "1")]).unwrap();
    let b = TensorModule::new(vec![factor(-2, 2, "1"), factor(1, 0, "t"), factor(4, 1, "t^2 + 1")]).unwrap();
    let c = TensorModule::new(vec![factor(1, 0, "t"), factor(4, 1, "t^2 + 1"), factor(-2, 3, "1")]).unwrap();

    for f in canonical_form(&a) {
        let g: Vec<String> = f.g.iter().map(|c| c.to_string()).collect();
        println!("  lambda={} alpha={} beta={} gamma={} g=[{}]", f.lambda, f.alpha, f.beta, f.gamma, g.join(", "));
    }
    println!("a vs b: {:?}", iso_check(&a, &b).unwrap());
    println!("a vs c: {:?}", iso_check(&a, &c).unwrap());

    // R_1 = m + 1 is an invariant separating different factor counts
    let two = TensorModule::new(vec![factor(1, 0, "t"), factor(4, 1, "t^2 + 1")]).unwrap();
    println!("R of 1: {} vs {}", r_g(&a, &a.one()).unwrap(), r_g(&two, &two.one()).unwrap());
}
