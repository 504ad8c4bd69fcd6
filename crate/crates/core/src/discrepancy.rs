//! Discrepancy of finite point sets in the unit cube.
//!
//! Star discrepancy is taken over anchored boxes `[0,a)` and `[0,a]`; the
//! extreme (1D) and dyadic values over all boxes. Closed boxes are handled by
//! counting with and without boundary points, never by a floating `ε`.

use serde::Serialize;

use crate::error::{usage, Error, Result};

/// Size guard for the quadratic exact algorithms.
pub const MAX_EXACT_POINTS: usize = 20_000;
/// Guard on `boxes × N` work for the brute-force oracle.
pub const MAX_BRUTE_WORK: u128 = 1 << 34;

/// A box `Π [lower_c, upper_c)` or `Π [lower_c, upper_c]` attaining a value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub value: f64,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub n: usize,
    pub star: Option<Discrepancy>,
    pub extreme: Option<Discrepancy>,
    pub dyadic: Option<Discrepancy>,
}

fn check_points<P: AsRef<[f64]>>(points: &[P], dim: usize) -> Result<()> {
    if points.is_empty() {
        return Err(usage!("empty point set"));
    }
    if dim == 0 {
        return Err(usage!("dimension must be at least 1"));
    }
    for p in points {
        let p = p.as_ref();
        if p.len() != dim {
            return Err(usage!(
                "point of dimension {} in a {dim}-dimensional set",
                p.len()
            ));
        }
        if let Some(v) = p.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Domain(format!("coordinate {v} outside [0,1]")));
        }
    }
    Ok(())
}

fn sorted(points: &[f64]) -> Result<Vec<f64>> {
    check_points(&points.iter().map(|&v| [v]).collect::<Vec<_>>(), 1)?;
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs)
}

fn witness1(lo: f64, hi: f64, closed: bool) -> Witness {
    Witness {
        lower: vec![lo],
        upper: vec![hi],
        closed,
    }
}

/// `sup_a |#{x ∈ [0,a)}/N - a|` together with the closed variant.
pub fn star_discrepancy_1d(points: &[f64]) -> Result<Discrepancy> {
    let xs = sorted(points)?;
    let n = xs.len() as f64;
    let mut best = Discrepancy {
        value: 0.0,
        witness: witness1(0.0, 1.0, false),
    };
    for (i, &x) in xs.iter().enumerate() {
        // [0, x] holds at least i+1 points, [0, x) at most i.
        let over = (i + 1) as f64 / n - x;
        let under = x - i as f64 / n;
        if over > best.value {
            best = Discrepancy {
                value: over,
                witness: witness1(0.0, x, true),
            };
        }
        if under > best.value {
            best = Discrepancy {
                value: under,
                witness: witness1(0.0, x, false),
            };
        }
    }
    Ok(best)
}

/// `sup_J |#{x ∈ J}/N - |J||` over all subintervals, by direct enumeration of
/// critical intervals (quadratic).
pub fn extreme_discrepancy_1d(points: &[f64]) -> Result<Discrepancy> {
    let xs = sorted(points)?;
    if xs.len() > MAX_EXACT_POINTS {
        return Err(Error::Resource(format!(
            "{} points exceed the exact limit {MAX_EXACT_POINTS}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    // Distinct values with cumulative counts: below[k] = #{x < v_k}, upto[k] = #{x ≤ v_k}.
    let mut values: Vec<f64> = Vec::new();
    let mut upto: Vec<usize> = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        if values.last() == Some(&x) {
            *upto.last_mut().unwrap() = i + 1;
        } else {
            values.push(x);
            upto.push(i + 1);
        }
    }
    let below: Vec<usize> = (0..values.len())
        .map(|k| if k == 0 { 0 } else { upto[k - 1] })
        .collect();
    let mut best = Discrepancy {
        value: 0.0,
        witness: witness1(0.0, 0.0, false),
    };
    let mut consider = |v: f64, w: Witness| {
        if v > best.value {
            best = Discrepancy {
                value: v,
                witness: w,
            };
        }
    };
    // Closed [v_a, v_b]: too many points.
    for a in 0..values.len() {
        for b in a..values.len() {
            let count = upto[b] - below[a];
            consider(
                count as f64 / n - (values[b] - values[a]),
                witness1(values[a], values[b], true),
            );
        }
    }
    // Open (l, r) with l ∈ {0} ∪ values, r ∈ values ∪ {1}: too few points.
    let zeros = xs.iter().take_while(|&&x| x == 0.0).count();
    let below_one = xs.iter().filter(|&&x| x < 1.0).count();
    let lefts: Vec<(f64, usize)> = std::iter::once((0.0, zeros))
        .chain(values.iter().zip(&upto).map(|(&v, &c)| (v, c)))
        .collect();
    let rights: Vec<(f64, usize)> = values
        .iter()
        .zip(&below)
        .map(|(&v, &c)| (v, c))
        .chain(std::iter::once((1.0, below_one)))
        .collect();
    for &(l, inside_from) in &lefts {
        for &(r, inside_to) in &rights {
            if r > l {
                let count = inside_to - inside_from;
                consider((r - l) - count as f64 / n, witness1(l, r, false));
            }
        }
    }
    Ok(best)
}

/// Niederreiter's closed form `D_N = max_i(i/N - x_(i)) + max_i(x_(i) - (i-1)/N)`,
/// used as an independent check of the enumeration.
pub fn extreme_discrepancy_1d_formula(points: &[f64]) -> Result<f64> {
    let xs = sorted(points)?;
    let n = xs.len() as f64;
    let plus = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (i + 1) as f64 / n - x)
        .fold(0.0, f64::max);
    let minus = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| x - i as f64 / n)
        .fold(0.0, f64::max);
    Ok(plus + minus)
}

/// `D*_N` of every prefix `N = 1..=len`, by insertion into a sorted array.
pub fn prefix_star_discrepancies_1d(points: &[f64]) -> Result<Vec<f64>> {
    sorted(points)?;
    if points.len() > 1 << 17 {
        return Err(Error::Resource(format!(
            "{} prefixes exceed the limit 2^17",
            points.len()
        )));
    }
    let mut xs: Vec<f64> = Vec::with_capacity(points.len());
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let at = xs.partition_point(|&v| v <= p);
        xs.insert(at, p);
        let n = xs.len() as f64;
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| ((i + 1) as f64 / n - x).max(x - i as f64 / n))
            .fold(0.0, f64::max);
        out.push(d);
    }
    Ok(out)
}

/// Exact anchored-box discrepancy in the unit square (quadratic).
pub fn star_discrepancy_2d<P: AsRef<[f64]>>(points: &[P]) -> Result<Discrepancy> {
    check_points(points, 2)?;
    if points.len() > MAX_EXACT_POINTS {
        return Err(Error::Resource(format!(
            "{} points exceed the exact limit {MAX_EXACT_POINTS}; use dyadic mode",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.as_ref()[0], p.as_ref()[1]))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = Discrepancy {
        value: 0.0,
        witness: Witness {
            lower: vec![0.0, 0.0],
            upper: vec![0.0, 0.0],
            closed: false,
        },
    };
    let mut consider = |v: f64, a: f64, b: f64, closed: bool| {
        if v > best.value {
            best = Discrepancy {
                value: v,
                witness: Witness {
                    lower: vec![0.0, 0.0],
                    upper: vec![a, b],
                    closed,
                },
            };
        }
    };
    // ys of points with x < a, kept sorted.
    let mut open: Vec<f64> = Vec::with_capacity(pts.len());
    let open_term = |open: &[f64], a: f64, consider: &mut dyn FnMut(f64, f64, f64, bool)| {
        let mut i = 0;
        while i < open.len() {
            let b = open[i];
            consider(a * b - i as f64 / n, a, b, false);
            while i < open.len() && open[i] == b {
                i += 1;
            }
        }
        consider(a - open.len() as f64 / n, a, 1.0, false);
    };
    let mut i = 0;
    while i < pts.len() {
        let a = pts[i].0;
        open_term(&open, a, &mut consider);
        while i < pts.len() && pts[i].0 == a {
            let y = pts[i].1;
            let at = open.partition_point(|&v| v <= y);
            open.insert(at, y);
            i += 1;
        }
        // Closed boxes [0,a] × [0,b] at b = each y.
        let mut j = 0;
        while j < open.len() {
            let b = open[j];
            while j < open.len() && open[j] == b {
                j += 1;
            }
            consider(j as f64 / n - a * b, a, b, true);
        }
    }
    open_term(&open, 1.0, &mut consider);
    Ok(best)
}

/// Sup over half-open boxes with corners on the `2^{-k}` grid, from cell
/// counts. The last axis is swept with running extrema of
/// `g(t) = count([0,t))/N - vol·t`.
pub fn dyadic_discrepancy<P: AsRef<[f64]>>(
    points: &[P],
    dim: usize,
    k: usize,
) -> Result<Discrepancy> {
    check_points(points, dim)?;
    if !(1..=3).contains(&dim) {
        return Err(usage!(
            "dyadic discrepancy supports dimensions 1 to 3, got {dim}"
        ));
    }
    let side = 1usize
        .checked_shl(k as u32)
        .filter(|_| k * dim <= 30)
        .ok_or_else(|| Error::Resource(format!("2^({k}·{dim}) cells exceed the budget")))?;
    let ranges = ((side + 1) * side / 2) as u128;
    if ranges.pow(dim as u32 - 1) * (side as u128 + 1) > MAX_BRUTE_WORK {
        return Err(Error::Resource(format!(
            "dyadic sweep at k={k}, dim={dim} exceeds the budget"
        )));
    }
    // Prefix sums over (side+1)^dim corners, row-major with the last axis fastest.
    let stride = side + 1;
    let size = stride.pow(dim as u32);
    let mut prefix = vec![0u32; size];
    let cell_of = |v: f64| ((v * side as f64) as usize).min(side - 1);
    for p in points {
        let idx = p
            .as_ref()
            .iter()
            .fold(0, |acc, &v| acc * stride + cell_of(v) + 1);
        prefix[idx] += 1;
    }
    for axis in 0..dim {
        let step = stride.pow((dim - 1 - axis) as u32);
        for idx in 0..size {
            if (idx / step) % stride > 0 {
                prefix[idx] += prefix[idx - step];
            }
        }
    }
    let n = points.len() as f64;
    let h = 1.0 / side as f64;
    let mut best = Discrepancy {
        value: 0.0,
        witness: Witness {
            lower: vec![0.0; dim],
            upper: vec![0.0; dim],
            closed: false,
        },
    };
    // Ranges for the leading dim-1 axes.
    let lead = dim - 1;
    let mut lo = vec![0usize; lead];
    let mut hi = vec![1usize; lead];
    loop {
        let vol: f64 = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &u)| (u - l) as f64 * h)
            .product();
        // count(Π[lo,hi) × [0,t)) by inclusion–exclusion over the lead corners.
        let count_to = |t: usize| -> i64 {
            let mut total = 0i64;
            for mask in 0..(1usize << lead) {
                let mut idx = 0;
                let mut sign = 1i64;
                for c in 0..lead {
                    let corner = if mask >> c & 1 == 1 {
                        sign = -sign;
                        lo[c]
                    } else {
                        hi[c]
                    };
                    idx = idx * stride + corner;
                }
                total += sign * i64::from(prefix[idx * stride + t]);
            }
            total
        };
        let (mut min_g, mut min_t, mut max_g, mut max_t) = (0.0f64, 0usize, 0.0f64, 0usize);
        for t in 1..=side {
            let g = count_to(t) as f64 / n - vol * t as f64 * h;
            for (v, from) in [(g - min_g, min_t), (max_g - g, max_t)] {
                if v > best.value {
                    let mut lower: Vec<f64> = lo.iter().map(|&l| l as f64 * h).collect();
                    let mut upper: Vec<f64> = hi.iter().map(|&u| u as f64 * h).collect();
                    lower.push(from as f64 * h);
                    upper.push(t as f64 * h);
                    best = Discrepancy {
                        value: v,
                        witness: Witness {
                            lower,
                            upper,
                            closed: false,
                        },
                    };
                }
            }
            if g < min_g {
                (min_g, min_t) = (g, t);
            }
            if g > max_g {
                (max_g, max_t) = (g, t);
            }
        }
        // Next lead range in lexicographic order.
        let mut c = lead;
        loop {
            if c == 0 {
                return Ok(best);
            }
            c -= 1;
            if hi[c] < side {
                hi[c] += 1;
                break;
            }
            if lo[c] + 1 < side {
                lo[c] += 1;
                hi[c] = lo[c] + 1;
                break;
            }
            lo[c] = 0;
            hi[c] = 1;
        }
    }
}

/// Boxes examined by the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoxFamily {
    /// Lower corner at the origin.
    Anchored,
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BruteForce {
    /// Over half-open grid boxes only.
    pub half_open: f64,
    /// Over half-open and closed grid boxes.
    pub value: f64,
}

/// Direct count over every box with corners on the `1/grid` lattice.
pub fn brute_force_discrepancy<P: AsRef<[f64]>>(
    points: &[P],
    dim: usize,
    grid: usize,
    family: BoxFamily,
) -> Result<BruteForce> {
    check_points(points, dim)?;
    if grid == 0 {
        return Err(usage!("grid must be positive"));
    }
    let per_axis: u128 = match family {
        BoxFamily::Anchored => grid as u128,
        BoxFamily::All => (grid as u128 + 1) * grid as u128 / 2,
    };
    let work = per_axis.pow(dim as u32) * points.len() as u128;
    if work > MAX_BRUTE_WORK {
        return Err(Error::Resource(format!(
            "brute force needs {work} point tests"
        )));
    }
    let n = points.len() as f64;
    let g = grid as f64;
    let mut out = BruteForce {
        half_open: 0.0,
        value: 0.0,
    };
    let mut lo = vec![0usize; dim];
    let mut hi = vec![1usize; dim];
    loop {
        let vol: f64 = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &u)| (u - l) as f64 / g)
            .product();
        let (mut open, mut closed) = (0usize, 0usize);
        for p in points {
            let p = p.as_ref();
            let inside = |strict: bool| {
                (0..dim).all(|c| {
                    let (l, u) = (lo[c] as f64 / g, hi[c] as f64 / g);
                    l <= p[c] && if strict { p[c] < u } else { p[c] <= u }
                })
            };
            open += usize::from(inside(true));
            closed += usize::from(inside(false));
        }
        let d_open = (open as f64 / n - vol).abs();
        let d_closed = (closed as f64 / n - vol).abs();
        out.half_open = out.half_open.max(d_open);
        out.value = out.value.max(d_open).max(d_closed);
        let mut c = dim;
        loop {
            if c == 0 {
                return Ok(out);
            }
            c -= 1;
            if hi[c] < grid {
                hi[c] += 1;
                break;
            }
            if family == BoxFamily::All && lo[c] + 1 < grid {
                lo[c] += 1;
                hi[c] = lo[c] + 1;
                break;
            }
            lo[c] = 0;
            hi[c] = 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub log_power: f64,
    /// `N·D_N / (log₂ N)^p`.
    pub constants: Vec<f64>,
    pub max: f64,
    /// Least-squares slope of `log c_N` against `log log₂ N`.
    pub slope: f64,
}

pub fn growth_fit(ns: &[usize], ds: &[f64], log_power: f64) -> Result<GrowthFit> {
    if ns.len() != ds.len() || ns.len() < 2 {
        return Err(usage!(
            "growth fit needs at least two (N, D) pairs of equal count"
        ));
    }
    if ns[0] < 2 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage!(
            "N values must be strictly increasing and at least 2"
        ));
    }
    if ds.iter().any(|&d| d.is_nan() || d <= 0.0) {
        return Err(usage!("discrepancies must be positive"));
    }
    let constants: Vec<f64> = ns
        .iter()
        .zip(ds)
        .map(|(&n, &d)| n as f64 * d / (n as f64).log2().powf(log_power))
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).log2().ln()).collect();
    let ys: Vec<f64> = constants.iter().map(|c| c.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(GrowthFit {
        log_power,
        max: constants.iter().copied().fold(0.0, f64::max),
        constants,
        slope: sxy / sxx,
    })
}
