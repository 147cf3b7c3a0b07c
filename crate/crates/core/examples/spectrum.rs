// Half-eigenvalues of a three-point problem with a jumping coefficient pair.
//
//     cargo run --example spectrum

use jumpspec::spectrum;
use jumpspec::ProblemSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // u(-1) = 0.2 u(0.4), u(1) = 0.5 u(0)
    let spec = ProblemSpec::new(vec![0.2], vec![0.4], vec![0.5], vec![0.0])?;
    let (a, b) = (4.0, 1.0);
    println!("{:>3} {:>3} {:>14} {:>12}", "k", "nu", "lambda", "s");
    for r in spectrum::half_eigenvalues(&spec, a, b, 5)? {
        println!("{:>3} {:>3} {:>14.10} {:>12.8}", r.k, r.nu, r.lambda, r.s);
    }
    let lin = spectrum::linear_eigenvalues(&spec, 3)?;
    println!("linear eigenvalues (a = b = 1): {lin:.8?}");
    Ok(())
}
