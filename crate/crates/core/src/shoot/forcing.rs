//! Forcing terms `h(x)` and nonlinearities `f(u)`, with their name grammars.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::solvability::ForcingFunction;

#[derive(Clone)]
pub enum Forcing {
    Zero,
    Constant(f64),
    Step(ForcingFunction),
    /// Piecewise-linear through `(xs, ys)`, constant beyond the ends.
    Samples { xs: Vec<f64>, ys: Vec<f64> },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forcing::Zero => write!(f, "Zero"),
            Forcing::Constant(c) => write!(f, "Constant({c})"),
            Forcing::Step(s) => write!(f, "Step({s:?})"),
            Forcing::Samples { xs, .. } => write!(f, "Samples({} points)", xs.len()),
            Forcing::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl Forcing {
    pub fn samples(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::InvalidArgument("forcing samples need matching, nonempty x and y".into()));
        }
        if !xs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("forcing sample abscissae must increase".into()));
        }
        Ok(Forcing::Samples { xs, ys })
    }

    pub fn custom(h: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Forcing::Custom(Arc::new(h))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Forcing::Zero => 0.0,
            Forcing::Constant(c) => *c,
            Forcing::Step(s) => s.eval(x),
            Forcing::Samples { xs, ys } => {
                let i = xs.partition_point(|&t| t <= x);
                if i == 0 {
                    ys[0]
                } else if i == xs.len() {
                    ys[xs.len() - 1]
                } else {
                    let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                    ys[i - 1] + t * (ys[i] - ys[i - 1])
                }
            }
            Forcing::Custom(h) => h(x),
        }
    }

    /// Points where `h` jumps.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Forcing::Step(s) => vec![s.x0],
            _ => Vec::new(),
        }
    }

    /// Parses `zero`, `one`, `const:c`, `step:x0[:level]` or
    /// `samples:path` (a CSV file with `x,h` rows, header optional).
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let bad = || Error::InvalidArgument(format!("cannot parse forcing {spec:?}"));
        match name.trim() {
            "zero" => Ok(Forcing::Zero),
            "one" => Ok(Forcing::Constant(1.0)),
            "const" => Ok(Forcing::Constant(args.trim().parse().map_err(|_| bad())?)),
            "step" => {
                let nums = parse_numbers(args).ok_or_else(bad)?;
                let (x0, level) = match nums.as_slice() {
                    [x0] => (*x0, -1.0),
                    [x0, level] => (*x0, *level),
                    _ => return Err(bad()),
                };
                Ok(Forcing::Step(ForcingFunction { x0, level }))
            }
            "samples" => {
                let (xs, ys) = read_samples(args.trim())?;
                Forcing::samples(xs, ys)
            }
            _ => Err(bad()),
        }
    }
}

fn read_samples(path: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
        let parsed: Option<(f64, f64)> = match (rec.get(0), rec.get(1)) {
            (Some(x), Some(y)) => x.parse().ok().zip(y.parse().ok()),
            _ => None,
        };
        match parsed {
            Some((x, y)) => {
                xs.push(x);
                ys.push(y);
            }
            // header row
            None if xs.is_empty() => continue,
            None => return Err(Error::InvalidArgument(format!("{path}: malformed row {rec:?}"))),
        }
    }
    Ok((xs, ys))
}

fn parse_numbers(args: &str) -> Option<Vec<f64>> {
    args.split([',', ':'])
        .map(|t| t.trim().parse::<f64>().ok())
        .collect()
}

/// A continuous nonlinearity `f` with its asymptotic slopes.
#[derive(Clone)]
pub struct Nonlinearity {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    f0: Option<f64>,
    f_plus_inf: f64,
    f_minus_inf: f64,
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nonlinearity")
            .field("name", &self.name)
            .field("f0", &self.f0)
            .field("f_plus_inf", &self.f_plus_inf)
            .field("f_minus_inf", &self.f_minus_inf)
            .finish()
    }
}

impl Nonlinearity {
    /// `f_plus_inf` and `f_minus_inf` are the limits of `f(s)/s` as
    /// `s -> +inf` and `s -> -inf`; `f0` is the limit at `0`, if it exists.
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f0: Option<f64>,
        f_plus_inf: f64,
        f_minus_inf: f64,
    ) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(f_plus_inf) || !ok(f_minus_inf) {
            return Err(Error::InvalidArgument(format!(
                "asymptotic slopes must be finite and positive, got {f_plus_inf} and {f_minus_inf}"
            )));
        }
        if let Some(v) = f0 {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("f0 must be finite, got {v}")));
            }
        }
        Ok(Nonlinearity {
            name: name.into(),
            f: Arc::new(f),
            f0,
            f_plus_inf,
            f_minus_inf,
        })
    }

    /// `f(s) = c s`.
    pub fn linear(c: f64) -> Result<Self> {
        Self::new(format!("linear:{c}"), move |s| c * s, Some(c), c, c)
    }

    /// `f(s) = a s^+ - b s^-`.
    pub fn jumping(a: f64, b: f64) -> Result<Self> {
        let f0 = (a == b).then_some(a);
        Self::new(format!("jumping:{a},{b}"), move |s| a * s.max(0.0) - b * (-s).max(0.0), f0, a, b)
    }

    /// `f(s) = s (f_inf + (f0 - f_inf) / (1 + s^2))`.
    pub fn rational_bump(f0: f64, f_inf: f64) -> Result<Self> {
        Self::new(
            format!("rational_bump:{f0},{f_inf}"),
            move |s| s * (f_inf + (f0 - f_inf) / (1.0 + s * s)),
            Some(f0),
            f_inf,
            f_inf,
        )
    }

    /// `f(s) = a s^+ - b s^- + c atan(s)`: a bounded perturbation of the
    /// jumping term.
    pub fn atan_shift(a: f64, b: f64, c: f64) -> Result<Self> {
        let f0 = (a == b).then_some(a + c);
        Self::new(
            format!("atan_shift:{a},{b},{c}"),
            move |s| a * s.max(0.0) - b * (-s).max(0.0) + c * s.atan(),
            f0,
            a,
            b,
        )
    }

    /// Parses `linear:c`, `jumping:a,b`, `rational_bump:f0,finf` or
    /// `atan_shift:a,b,c`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let bad = || Error::InvalidArgument(format!("cannot parse nonlinearity {spec:?}"));
        let nums = parse_numbers(args).ok_or_else(bad)?;
        match (name.trim(), nums.as_slice()) {
            ("linear", [c]) => Self::linear(*c),
            ("jumping", [a, b]) => Self::jumping(*a, *b),
            ("rational_bump", [f0, finf]) => Self::rational_bump(*f0, *finf),
            ("atan_shift", [a, b, c]) => Self::atan_shift(*a, *b, *c),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.f)(s)
    }

    pub fn f0(&self) -> Option<f64> {
        self.f0
    }

    pub fn f_plus_inf(&self) -> f64 {
        self.f_plus_inf
    }

    pub fn f_minus_inf(&self) -> f64 {
        self.f_minus_inf
    }

    /// `s f(s) > 0` on a logarithmic sample of `s != 0`.
    pub fn sign_condition_holds(&self) -> bool {
        (-40..=40)
            .map(|i| 10f64.powf(i as f64 / 8.0))
            .all(|s| s * self.eval(s) > 0.0 && -s * self.eval(-s) > 0.0)
    }
}
