// Where does lambda sit relative to the half-eigenvalues?
//
//     cargo run --example classify

use jumpspec::solvability::{classify_lambda, IntervalKind};
use jumpspec::ProblemSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::dirichlet();
    let (a, b) = (4.0, 1.0);
    for lambda in [0.5, 1.0, 2.5, 4.0, 7.0, 12.0, 20.0] {
        let c = classify_lambda(&spec, a, b, lambda)?;
        let kind = match c.kind {
            IntervalKind::Gap(k) => format!("gap {k}"),
            IntervalKind::Split(k) => format!("split {k}"),
            IntervalKind::NearHalfEigenvalue(k, nu) => format!("at lambda_{k},{nu}"),
        };
        println!("lambda = {lambda:>5}: {kind:<12} degree {:?}", c.degree);
    }
    Ok(())
}
