//! Root systems and multiplicities read from plain-text files.

use conformal_dunkl::rootsys::{gamma, parse_assignments, parse_roots, validate_root_system, write_assignments};

const ROOTS: &str = "\
# B2 in the Euclidean plane of R^{3,1}: X0 X1 X2 Xinf
0 1 0 0
0 -1 0 0
0 0 1 0
0 0 -1 0
0 1 1 0
0 1 -1 0
0 -1 1 0
0 -1 -1 0
";

fn main() {
    let sys = validate_root_system(parse_roots(ROOTS).unwrap()).unwrap().with_name("B2 from file");
    println!("{}: {} roots, orbits {:?}", sys.name(), sys.len(), sys.orbits());
    let k = parse_assignments(&sys, "k.0 = 1/2\nk.1 = 3\n").unwrap();
    println!("gamma_k = {}", gamma(&sys, &k));
    print!("{}", write_assignments(&sys, &k));

    let broken = "0 1 0 0\n0 1 1 0\n";
    match validate_root_system(parse_roots(broken).unwrap()) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
