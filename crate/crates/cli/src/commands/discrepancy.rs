use pfvdc::discrepancy::{
    dyadic_discrepancy, extreme_discrepancy_1d, growth_fit, star_discrepancy_1d,
    star_discrepancy_2d, Discrepancy, DiscrepancyReport, Witness, MAX_EXACT_POINTS,
};
use pfvdc::Error;

use crate::args::DiscrepancyArgs;
use crate::io::{decimal, read_points, Report};
use crate::Failure;

/// Dyadic resolution used when the exact star discrepancy is unavailable.
fn default_dyadic_k(dim: usize) -> usize {
    match dim {
        1 => 16,
        2 => 10,
        _ => 5,
    }
}

fn schedule(args: &DiscrepancyArgs, dim: usize, count: usize) -> Result<Vec<usize>, Error> {
    match &args.schedule {
        Some(s) => {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Usage(
                    "--schedule must be strictly increasing".into(),
                ));
            }
            if s[0] == 0 || *s.last().unwrap() > count {
                return Err(Error::Usage(format!(
                    "--schedule entries must lie in 1..={count}"
                )));
            }
            Ok(s.clone())
        }
        None => {
            let step = 1usize << dim;
            let mut out = Vec::new();
            let mut n = 1usize;
            while n <= count {
                out.push(n);
                match n.checked_mul(step) {
                    Some(m) => n = m,
                    None => break,
                }
            }
            Ok(out)
        }
    }
}

fn report(
    points: &[Vec<f64>],
    dim: usize,
    dyadic_k: Option<usize>,
) -> Result<DiscrepancyReport, Error> {
    let n = points.len();
    let exact = n <= MAX_EXACT_POINTS;
    let (star, extreme) = match dim {
        1 if exact => {
            let xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
            (
                Some(star_discrepancy_1d(&xs)?),
                Some(extreme_discrepancy_1d(&xs)?),
            )
        }
        2 if exact => (Some(star_discrepancy_2d(points)?), None),
        _ => (None, None),
    };
    let k = match (dyadic_k, &star) {
        (Some(k), _) => Some(k),
        (None, None) => Some(default_dyadic_k(dim)),
        (None, Some(_)) => None,
    };
    let dyadic = k.map(|k| dyadic_discrepancy(points, dim, k)).transpose()?;
    Ok(DiscrepancyReport {
        n,
        star,
        extreme,
        dyadic,
    })
}

fn witness(w: &Witness) -> String {
    let close = if w.closed { "]" } else { ")" };
    w.lower
        .iter()
        .zip(&w.upper)
        .map(|(a, b)| format!("[{}:{}{close}", decimal(*a), decimal(*b)))
        .collect::<Vec<_>>()
        .join("x")
}

fn cell(d: &Option<Discrepancy>) -> String {
    d.as_ref().map_or(String::new(), |d| decimal(d.value))
}

pub fn run(args: &DiscrepancyArgs) -> Result<(), Failure> {
    let table = read_points(&args.points)?;
    let dim = table.dim;
    let ns = schedule(args, dim, table.points.len())?;
    let p = args.log_power.unwrap_or(dim as f64);
    let mut r = Report::new("discrepancy");
    r.meta("points", &args.points.display().to_string());
    r.meta("dim", &dim.to_string());
    r.meta("count", &table.points.len().to_string());
    r.meta("log_power", &decimal(p));
    match args.dyadic_k {
        Some(k) => r.meta("dyadic_k", &k.to_string()),
        None => r.meta("dyadic_k_fallback", &default_dyadic_k(dim).to_string()),
    }
    r.line("N,D_star,D_extreme,D_dyadic,c_N,witness");
    let (mut fit_n, mut fit_d) = (Vec::new(), Vec::new());
    for &n in &ns {
        let rep = report(&table.points[..n], dim, args.dyadic_k)?;
        let primary = rep
            .star
            .as_ref()
            .or(rep.dyadic.as_ref())
            .expect("a measure is always computed");
        let c = if n >= 2 {
            let c = n as f64 * primary.value / (n as f64).log2().powf(p);
            fit_n.push(n);
            fit_d.push(primary.value);
            decimal(c)
        } else {
            String::new()
        };
        r.line(&format!(
            "{n},{},{},{},{c},{}",
            cell(&rep.star),
            cell(&rep.extreme),
            cell(&rep.dyadic),
            witness(&primary.witness)
        ));
    }
    match growth_fit(&fit_n, &fit_d, p) {
        Ok(fit) => {
            r.line(&format!("# fit_max_c: {}", decimal(fit.max)));
            r.line(&format!("# fit_slope: {}", decimal(fit.slope)));
        }
        Err(e) => r.line(&format!("# fit: {e}")),
    }
    r.finish(args.out.out.as_ref())
}
