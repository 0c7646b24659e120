//! The two maps into differential-operator algebras: homomorphism check and
//! generator preimages.

use witt_diamond::hom::{image_witnesses, surjectivity_witnesses, t_signature, verify_hom, GeneratorMap, PhiAB, PhiABGG};
use witt_diamond::lie::Generator;
use witt_diamond::poly::SparsePoly;
use witt_diamond::scalar::{frac, int};

fn main() {
    let abgg = PhiABGG::new(frac(1, 2), int(3), int(-1), SparsePoly::parse(&t_signature(), "t^2 + 2").unwrap()).unwrap();
    for g in [Generator::l(1), Generator::a(2), Generator::b(-1), Generator::c(0), Generator::d(1)] {
        println!("{g} -> {}", abgg.image(g));
    }
    println!("second map, window 2: {} violations", verify_hom(&abgg, 2).len());
    for w in surjectivity_witnesses(&abgg) {
        println!("  preimage {}: {}", w.label, w.holds(&abgg));
    }

    let ab = PhiAB::new(int(1), int(2)).unwrap();
    let violations = verify_hom(&ab, 1);
    println!("first map, window 1: {} violations", violations.len());
    for v in violations.iter().take(3) {
        println!("  [{}, {}]: expected {}, got {}", v.x, v.y, v.expected, v.actual);
    }
    let held = image_witnesses(&ab).iter().filter(|w| w.holds(&ab)).count();
    println!("first map preimages holding: {held}");
}
