//! Modules F(P, V) built from a module over the differential operators in one
//! variable and a module over the rank-one loop Diamond algebra; the central
//! operator Q acts by eps on the one-dimensional modules.

use witt_diamond::fock::{q_action, Coordinate, FModule, RModule, UbModule};
use witt_diamond::lie::Generator;
use witt_diamond::module::{module_axiom_check, monomial_basis, LModule};
use witt_diamond::scalar::{frac, int};

fn main() {
    let eps = frac(7, 2);
    let f = FModule::new(int(1), int(2), RModule::weighted(frac(1, 3), int(0)), UbModule::OneDim(eps)).unwrap();
    let v = f.basis_vector(2, -1);
    println!("module: {}", f.name());
    println!("v = {v}");
    for g in [Generator::l(1), Generator::a(0), Generator::b(2), Generator::c(-1), Generator::d(1)] {
        println!("  {g} v = {}", f.act(g, &v).unwrap());
    }
    println!("Q v = {}", q_action(&f, &v).unwrap());

    let split = FModule::new(int(0), int(1), RModule::split(Coordinate::Shift(int(2)), frac(1, 2)).unwrap(), UbModule::OneDim(int(1))).unwrap();
    let samples = monomial_basis(&split.signature(), 2);
    println!("{}: {} axiom violations", split.name(), module_axiom_check(&split, 2, &samples).unwrap().len());
}
