use std::fs;
use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;
use pfvdc::interval_maps::catalog::{doubling, full_shift, golden_mean, tent, two_block};
use pfvdc::multidim::{
    minor_failures, rect_image_test_2d, rect_image_test_3d, span_test_2d, BoxShape, MixMatrix,
    Reading, DEFAULT_POINT_BUDGET,
};
use pfvdc::spectral::zeta_identity_check;
use pfvdc::vdc1d::vdc_values;
use pfvdc::Error;

use crate::args::VerifyArgs;
use crate::io::Report;
use crate::Failure;

/// Largest degree for the exact zeta-identity residual.
const EXACT_DEGREE_CAP: usize = 24;

fn read_mix(path: &Path) -> Result<MixMatrix, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.starts_with("row") {
            continue;
        }
        let row = line
            .split_whitespace()
            .skip(1)
            .map(|t| match t {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => Err(Error::Parse(format!(
                    "mixing matrix entry {t:?} is not 0 or 1"
                ))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        rows.push(row);
    }
    Ok(MixMatrix::from_rows(&rows)?)
}

fn radical_inverse(mut i: u64) -> f64 {
    let (mut v, mut w) = (0.0, 0.5);
    while i > 0 {
        if i & 1 == 1 {
            v += w;
        }
        i >>= 1;
        w /= 2.0;
    }
    v
}

struct Checks {
    report: Report,
    failed: usize,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool, detail: &str) {
        if !ok {
            self.failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        self.report.line(&format!("{status} {name}: {detail}"));
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    if args.export_mix {
        let mut r = Report::new("verify");
        r.meta(
            "mix_checksum",
            &format!("{:016x}", MixMatrix::stored().checksum()),
        );
        r.line(MixMatrix::stored().to_grid().trim_end());
        return r.finish(args.out.out.as_ref());
    }
    let mix = match &args.mix {
        Some(path) => read_mix(path)?,
        None => MixMatrix::stored(),
    };
    let mut c = Checks {
        report: Report::new("verify"),
        failed: 0,
    };
    c.report.meta(
        "mix",
        &args
            .mix
            .as_ref()
            .map_or("stored".into(), |p| p.display().to_string()),
    );

    let span_ok = (1..=64)
        .map(span_test_2d)
        .collect::<pfvdc::Result<Vec<_>>>()?;
    let bad: Vec<usize> = (1..=64).filter(|&n| !span_ok[n - 1]).collect();
    c.record(
        "span_2d",
        bad.is_empty(),
        &format!("n=1..64, failing {bad:?}"),
    );

    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for m in 0..=n {
            let (sa, sb) = (1usize << (n - m), 1usize << (n + m));
            for (a, b) in [(0, 0), (sa - 1, sb - 1), (sa / 2, 1)] {
                cases += 1;
                let (alpha, beta) = (a as f64 / sa as f64, b as f64 / sb as f64);
                if !rect_image_test_2d(n, m, alpha, beta, 0, DEFAULT_POINT_BUDGET)? {
                    bad.push(format!("(n={n},m={m},{alpha},{beta})"));
                }
            }
        }
    }
    c.record(
        "rect_2d",
        bad.is_empty(),
        &format!("{cases} rectangles, failing [{}]", bad.join(" ")),
    );

    let checksum = mix.checksum();
    c.record(
        "mix_checksum",
        mix.matches_stored(),
        &format!(
            "{checksum:016x} (stored {:016x})",
            MixMatrix::stored().checksum()
        ),
    );
    let minors = minor_failures(&mix);
    c.record(
        "mix_minors",
        minors.is_empty(),
        &format!("{} singular minors", minors.len()),
    );

    let mut cases = 0;
    let mut bad = Vec::new();
    for k in 1..=3 {
        for n in 0..=k {
            for m in 0..=(k - n) {
                for shape in [BoxShape::First, BoxShape::Second] {
                    cases += 1;
                    let ok = rect_image_test_3d(
                        &mix,
                        k,
                        n,
                        m,
                        [0.0; 3],
                        shape,
                        0,
                        Reading::Direct,
                        DEFAULT_POINT_BUDGET,
                    )?;
                    if !ok {
                        bad.push(format!("({shape:?},k={k},n={n},m={m})"));
                    }
                }
            }
        }
    }
    c.record(
        "box_3d",
        bad.is_empty(),
        &format!("{cases} boxes, failing [{}]", bad.join(" ")),
    );

    let degree = args.degree.min(EXACT_DEGREE_CAP);
    let mut bad = Vec::new();
    for (name, map) in [
        ("doubling", doubling()),
        ("tent", tent()),
        ("golden_mean", golden_mean()),
        ("full_shift3", full_shift(3)),
        ("two_block", two_block()),
    ] {
        if !zeta_identity_check::<BigRational>(&map, degree)?.is_zero() {
            bad.push(name);
        }
    }
    c.record(
        "zeta_identity",
        bad.is_empty(),
        &format!("exact to degree {degree}, failing {bad:?}"),
    );

    let pts = vdc_values(&doubling(), 0.5, 127)?;
    let mismatches = pts
        .iter()
        .enumerate()
        .filter(|(i, &p)| p != radical_inverse(*i as u64 + 1))
        .count();
    c.record(
        "vdc_doubling",
        mismatches == 0,
        &format!("127 points, {mismatches} differ from the radical inverse"),
    );

    let failed = c.failed;
    c.report.meta("failed", &failed.to_string());
    c.report.finish(args.out.out.as_ref())?;
    if failed > 0 {
        return Err(Failure::Failed);
    }
    Ok(())
}
