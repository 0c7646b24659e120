//! Tensor products of Omega modules: reduction to 1⊗1 with distinct lambdas,
//! and the proper submodule witness when two lambdas coincide.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_diamond::module::LModule;
use witt_diamond::omega::OmegaParams;
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::{frac, int};
use witt_diamond::tensor::{simplicity_decision, tensor_reduce_to_bottom, witness_check, SimplicityDecision, TensorModule};

fn factor(lambda: i64, g: &str) -> OmegaParams {
    let g = SparsePoly::parse(&signature(vec![Var::poly("t")]), g).unwrap();
    OmegaParams::new(frac(1, 2), int(2), int(1), int(lambda), g).unwrap()
}

fn main() {
    let t = TensorModule::new(vec![factor(2, "t"), factor(3, "1")]).unwrap();
    let v = t.parse_vector("s1*t2 + t1^2").unwrap();
    let c = tensor_reduce_to_bottom(&t, &v).unwrap();
    println!("{}: {} -> {} in {} steps", t.name(), c.start, c.result, c.steps.len());
    for s in &c.steps {
        println!("  {}", s.label);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    match simplicity_decision(&t, 3, &mut rng).unwrap() {
        SimplicityDecision::Simple { samples } => println!("simple; {} sampled certificates", samples.len()),
        SimplicityDecision::NotSimple { witness } => println!("not simple: {}", witness.description),
    }

    let equal = TensorModule::new(vec![factor(2, "t"), factor(2, "t^2")]).unwrap();
    let w = witness_check(&equal, 0, 1, 3, 6).unwrap();
    println!("equal lambdas: {}; {} vectors, {} images, {} escapes", w.description, w.vectors, w.images, w.escapes);
}
