//! Structure constants of the algebra and PBW normal forms.

use witt_diamond::lie::{bracket, jacobi_residual, pbw_normalize, Generator};

fn main() {
    let pairs = [
        (Generator::l(1), Generator::l(-2)),
        (Generator::l(2), Generator::a(3)),
        (Generator::a(1), Generator::b(-1)),
        (Generator::d(2), Generator::a(0)),
        (Generator::d(0), Generator::b(4)),
    ];
    for (x, y) in pairs {
        println!("[{x}, {y}] = {}", bracket(x, y));
    }

    let window = Generator::window(2);
    let mut bad = 0;
    for &x in &window {
        for &y in &window {
            for &z in &window {
                bad += !jacobi_residual(x, y, z).is_zero() as usize;
            }
        }
    }
    println!("Jacobi violations over {} generators: {bad}", window.len());

    let word = [Generator::d(1), Generator::b(-1), Generator::a(2), Generator::l(0)];
    println!("normal form of d[1] b[-1] a[2] L[0]: {}", pbw_normalize(&word));
}
