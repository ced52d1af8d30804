//! The root system B_{n+1} = B_n ∪ S in R^{n+1,1}: tags, orbits, group order,
//! hyperplane bases and reflecting subspheres.

use conformal_dunkl::rootsys::{build_b, generate_group, hyperplane_basis, SubsphereQuadric, DEFAULT_GROUP_CAP};

fn main() {
    let n = 2;
    let sys = build_b(n);
    let group = generate_group(&sys, DEFAULT_GROUP_CAP).expect("finite group");
    println!("{} in R^{{{},1}}: {} roots, {} orbits, |G| = {}", sys.name(), n + 1, sys.len(), sys.orbits().len(), group.order());

    for (i, root) in sys.roots().iter().enumerate().filter(|(i, _)| sys.is_positive(*i)) {
        let q = SubsphereQuadric::of(root);
        let shape = match q.sphere() {
            Some((center, r2)) => format!("sphere center {center:?} radius^2 {r2:.4}"),
            None => "hyperplane".to_string(),
        };
        println!("{:>2} {:<4} orbit {} <a,a> = {:<3} {root}  {shape}", i, root.tag(), sys.orbit_of(i), root.norm());
    }

    let inversion = sys.roots().iter().find(|r| !r.is_euclidean() && r.euclidean().iter().all(|c| c.is_zero())).unwrap();
    println!("hyperplane basis of {inversion}:");
    for v in hyperplane_basis(inversion) {
        let coords: Vec<String> = v.coords.iter().map(ToString::to_string).collect();
        println!("  ({})  pairing {}", coords.join(", "), inversion.pair_with(&v.coords));
    }
    println!("form preserved by every element: {}", group.preserves_form());
}
