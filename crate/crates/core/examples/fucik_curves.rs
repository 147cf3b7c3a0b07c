// Traces the first Fučík curves of a multi-point problem and writes an SVG.
//
//     cargo run --example fucik_curves -- curves.svg

use jumpspec::fucik;
use jumpspec::svg::{Plot, Series};
use jumpspec::ProblemSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::new(vec![0.1, 0.3], vec![-0.5, 0.6], vec![0.25], vec![0.2])?;
    let grid = fucik::chebyshev_theta_grid(41, 0.02);
    let mut series = Vec::new();
    for ((k, nu), curve) in fucik::trace_all(&spec, 3, &grid)? {
        let (x, y) = fucik::diagonal_crossing(&spec, k)?;
        println!("sigma_{k},{nu}: {} samples, meets the diagonal at ({x:.6}, {y:.6})", curve.len());
        series.push(Series {
            label: format!("k = {k}, nu = {nu}"),
            points: curve.iter().map(|s| (s.point_a, s.point_b)).collect(),
        });
    }
    let plot = Plot::auto("Fučík curves", &series);
    let path = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fucik_curves.svg"));
    std::fs::write(&path, plot.render(&series))?;
    println!("wrote {}", path.display());
    Ok(())
}
