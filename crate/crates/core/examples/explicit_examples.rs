// Golden checks: an explicit half-eigenfunction whose critical point sits
// on the boundary, and a jumping pair with no (2,+) half-eigenvalue.
//
//     cargo run --release --example explicit_examples

use jumpspec::verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for c in verify::run_all()? {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    for x in [-1.0, -0.25, 0.5, 1.0] {
        let (u, du, _) = verify::boundary_example_phi(x);
        println!("phi({x:>5}) = {u:+.12}, phi' = {du:+.12}");
    }
    Ok(())
}
