//! Reflections of the null cone seen in the chart x ↦ (1, x, −½|x|²): Euclidean
//! reflections for B_n roots, inversions in subspheres for S roots.

use conformal_dunkl::ambient::AmbientVector;
use conformal_dunkl::rootsys::{build_b, ChartReflection, RootTag};
use conformal_dunkl::scalar::Exact;

fn main() {
    let sys = build_b(2);
    let x = [0.4, -0.3];
    for root in sys.positive_roots() {
        let r = ChartReflection::compute(root, &x).expect("finite image");
        let back = ChartReflection::compute(root, &r.image).expect("finite image");
        let lift = root.reflect(&AmbientVector::cone_point(&x));
        let via_cone: Vec<f64> = lift.euclidean().iter().map(|c| c / lift.x0()).collect();
        println!(
            "{:<4} {root}: D = {:+.4}, J = {:.4}, r(x) = [{:+.4}, {:+.4}], cone [{:+.4}, {:+.4}], r(r(x)) = [{:+.4}, {:+.4}]",
            root.tag(),
            r.d,
            r.j,
            r.image[0],
            r.image[1],
            via_cone[0],
            via_cone[1],
            back.image[0],
            back.image[1]
        );
    }

    // exact arithmetic in Q(√2)
    let s = sys.positive_roots().find(|r| r.tag() == RootTag::S).unwrap();
    let y = [Exact::int(1), Exact::frac(1, 2)];
    let r = ChartReflection::compute(s, &y).unwrap();
    println!("exact: {s} sends (1, 1/2) to ({}, {}) with J = {}", r.image[0], r.image[1], r.j);
}
