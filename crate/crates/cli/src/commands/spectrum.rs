use num_rational::BigRational;
use num_traits::ToPrimitive;
use pfvdc::interval_maps::{classify_endpoints, markov_structure, DEFAULT_ENDPOINT_DEPTH};
use pfvdc::spectral::certificate::{markov_minor_certificate, zeta_coefficient_bound, Verdict};
use pfvdc::spectral::{ergodic_components, invariant_density, spectrum, zeta_identity_check};

use crate::args::{Format, SpectrumArgs};
use crate::io::{decimal, load_map, Report};
use crate::Failure;

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn run(args: &SpectrumArgs) -> Result<(), Failure> {
    if args.degree == 0 {
        return Err(pfvdc::Error::Usage("--degree must be at least 1".into()).into());
    }
    let loaded = load_map(&args.map)?;
    let map = &loaded.map;
    let mut r = Report::new("spectrum");
    r.meta("map", &format!("{} ({})", loaded.name, loaded.source));
    r.meta("map_hash", &loaded.hash());
    r.meta("beta", &decimal(map.beta()));
    r.meta("degree", &args.degree.to_string());
    let classes = classify_endpoints(map, DEFAULT_ENDPOINT_DEPTH);
    let non_markov: Vec<String> = classes
        .iter()
        .filter(|c| !c.is_markov())
        .map(|c| format!("{}@{}", c.symbol, decimal(c.value)))
        .collect();
    let mut inconclusive = false;
    if markov_structure(map, DEFAULT_ENDPOINT_DEPTH)
        .matrix()
        .is_some()
    {
        r.meta("route", "markov");
        let s = spectrum(map)?;
        if args.format == Format::Csv {
            r.line("re,im,modulus,multiplicity,residual");
            for z in &s.zeros {
                r.line(&format!(
                    "{},{},{},{},{}",
                    decimal(z.re),
                    decimal(z.im),
                    decimal(z.modulus),
                    z.multiplicity,
                    decimal(z.residual)
                ));
            }
            return r.finish(args.out.out.as_ref());
        }
        for z in &s.zeros {
            r.line(&format!(
                "zero: {} {:+}i |z|={} multiplicity={} residual={:.3e}",
                decimal(z.re),
                z.im,
                decimal(z.modulus),
                z.multiplicity,
                z.residual
            ));
        }
        r.line(&format!("det_coeffs: {:?}", s.det_coeffs));
        r.line(&format!("unit_multiplicity: {}", s.unit_multiplicity));
        r.line(&format!("eta: {}", s.eta.map_or("none".into(), decimal)));
        r.line(&format!("certificate_annulus: {}", s.certificate));
        if s.unit_multiplicity > 1 {
            r.line(&format!(
                "note: zero at 1 has multiplicity {} (not ergodic)",
                s.unit_multiplicity
            ));
        }
        let components = ergodic_components(map)?;
        r.line(&format!("ergodic_components: {components}"));
        if components == 1 {
            let d = invariant_density(map)?;
            r.line(&format!(
                "invariant_density: {}",
                d.coeffs
                    .iter()
                    .map(|&c| decimal(c))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        let residual = zeta_identity_check::<BigRational>(map, args.degree.min(24))?;
        r.line(&format!(
            "zeta_identity_residual_exact(K={}): {}",
            args.degree.min(24),
            residual.to_f64().unwrap_or(f64::NAN)
        ));
        let residual = zeta_identity_check::<f64>(map, args.degree)?;
        r.line(&format!(
            "zeta_identity_residual(K={}): {residual:.3e}",
            args.degree
        ));
    } else {
        r.meta("route", "signed");
        r.line(&format!(
            "non_markov_endpoints: {} [{}]",
            non_markov.len(),
            non_markov.join(", ")
        ));
        let c = markov_minor_certificate(map, args.degree)?;
        r.line(&format!("markov_symbols: {}", c.markov_symbols.join(" ")));
        r.line(&format!("truncation_bound: {:.3e}", c.truncation_bound));
        r.line(&format!(
            "minor_contour: radius={} winding={} min|det|={:.3e} max_bound={:.3e} conclusive={}",
            decimal(c.minor_contour.radius),
            c.minor_contour.winding,
            c.minor_contour.min_abs,
            c.minor_contour.max_bound,
            c.minor_contour.conclusive
        ));
        for z in &c.minor_zeros {
            r.line(&format!(
                "minor_zero: {} {:+}i |z|={}",
                decimal(z.re),
                z.im,
                decimal(z.modulus)
            ));
        }
        r.line(&format!("certificate_minor: {}", verdict(c.verdict)));
        r.line(&format!(
            "zeta_contour: winding={} min|det|={:.3e} max_bound={:.3e} conclusive={}",
            c.zeta_contour.winding,
            c.zeta_contour.min_abs,
            c.zeta_contour.max_bound,
            c.zeta_contour.conclusive
        ));
        for z in &c.zeta_zeros {
            r.line(&format!(
                "zeta_zero: {} {:+}i |z|={}",
                decimal(z.re),
                z.im,
                decimal(z.modulus)
            ));
        }
        r.line(&format!("certificate_zeta: {}", verdict(c.zeta_verdict)));
        inconclusive = c.verdict == Verdict::Inconclusive;
    }
    let bound = zeta_coefficient_bound(map, args.degree)?;
    r.line(&format!(
        "zeta_n_bound: sup={} head={} tail={} appears_bounded={}",
        decimal(bound.sup),
        decimal(bound.head_sup),
        decimal(bound.tail_sup),
        bound.appears_bounded
    ));
    r.finish(args.out.out.as_ref())?;
    if inconclusive {
        return Err(Failure::Inconclusive);
    }
    Ok(())
}
