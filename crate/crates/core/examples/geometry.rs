//! The flattening map near the boundary of the unit disc and the barrier
//! built from it.

use fracplap::fields::{barrier_rho, psi_inverse, psi_map, BallGeometry};
use fracplap::Result;

fn main() -> Result<()> {
    let g = BallGeometry::standard(2);
    println!("flattening radius {}", g.flattening_radius);
    for x in [[0.0, 0.05], [0.03, 0.02], [-0.05, 0.1], [0.02, 0.01]] {
        let big = psi_map(&g, &x);
        let back = psi_inverse(&g, &big)?;
        println!(
            "x = {x:?}  Psi(x) = ({:>9.6}, {:>9.6})  round trip {:.1e}  rho {:.6}",
            big[0],
            big[1],
            (back[0] - x[0]).hypot(back[1] - x[1]),
            barrier_rho(&g, &x)
        );
    }
    for xn in [0.0, 0.05, 0.1] {
        println!(
            "section through t = 0.05 at X_n = {xn}: {:.6}",
            g.section_value(&[0.05], xn)
        );
    }
    Ok(())
}
