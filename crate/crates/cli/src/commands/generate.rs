use pfvdc::bits::BitString;
use pfvdc::multidim::{map2d_level, map3d_level, MixMatrix, Reading, DEFAULT_POINT_BUDGET};
use pfvdc::vdc1d::{vdc_level, VdcStream};
use pfvdc::Error;

use crate::args::{Format, GenerateArgs, ReadingArg};
use crate::io::{bits, decimal, load_map, parse_base, parse_levels, Report};
use crate::Failure;

enum Span {
    Levels(usize, usize),
    Count(usize),
}

fn span(args: &GenerateArgs) -> Result<Span, Error> {
    match (&args.levels, args.n) {
        (Some(l), None) => {
            let (a, b) = parse_levels(l)?;
            Ok(Span::Levels(a, b))
        }
        (None, Some(n)) => Ok(Span::Count(n)),
        _ => Err(Error::Usage("give exactly one of --levels or --n".into())),
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Decimal => "decimal",
        Format::Bits => "bits",
        Format::Csv => "csv",
    }
}

pub fn run(args: &GenerateArgs) -> Result<(), Failure> {
    if !(1..=3).contains(&args.dim) {
        return Err(Error::Usage(format!("--dim must be 1, 2 or 3, got {}", args.dim)).into());
    }
    if !(2..=4096).contains(&args.precision) {
        return Err(Error::Usage(format!(
            "--precision must be in 2..=4096, got {}",
            args.precision
        ))
        .into());
    }
    let span = span(args)?;
    let base = parse_base(args.base.as_deref(), args.dim)?;
    let mut r = Report::new("generate");
    r.meta("dim", &args.dim.to_string());
    match args.dim {
        1 => one(args, &base, span, &mut r)?,
        _ => multi(args, &base, span, &mut r)?,
    }
    r.finish(args.out.out.as_ref())
}

fn one(args: &GenerateArgs, base: &[f64], span: Span, r: &mut Report) -> Result<(), Failure> {
    let spec = args
        .map
        .as_deref()
        .ok_or_else(|| Error::Usage("1D generation needs --map".into()))?;
    let loaded = load_map(spec)?;
    let map = &loaded.map;
    let x = base[0];
    let points = match span {
        Span::Levels(a, b) => {
            let mut v = Vec::new();
            for n in a..=b {
                v.extend(vdc_level(map, x, n)?);
            }
            v
        }
        Span::Count(n) => VdcStream::new(map.clone(), x)?
            .take(n)
            .collect::<pfvdc::Result<Vec<_>>>()?,
    };
    r.meta("map", &format!("{} ({})", loaded.name, loaded.source));
    r.meta("map_hash", &loaded.hash());
    r.meta("base", &decimal(x));
    r.meta(
        "order",
        "words by length, then last differing symbol, reversed under a negative suffix sign",
    );
    r.meta("precision", &args.precision.to_string());
    r.meta("count", &points.len().to_string());
    r.meta("format", format_name(args.format));
    if args.format == Format::Csv {
        r.line("index,word,x");
    }
    for (i, p) in points.iter().enumerate() {
        let line = match args.format {
            Format::Decimal => decimal(p.point),
            Format::Bits => bits(p.point, args.precision)?,
            Format::Csv => format!("{i},{},{}", p.word, decimal(p.point)),
        };
        r.line(&line);
    }
    Ok(())
}

fn multi(args: &GenerateArgs, base: &[f64], span: Span, r: &mut Report) -> Result<(), Failure> {
    if args.map.is_some() {
        return Err(Error::Usage("--map applies to 1D generation only".into()).into());
    }
    let reading = match args.reading {
        ReadingArg::Direct => Reading::Direct,
        ReadingArg::Composition => Reading::Composition,
    };
    let coords: Vec<BitString> = base
        .iter()
        .map(|&v| BitString::from_unit(v, args.precision))
        .collect::<pfvdc::Result<_>>()?;
    let per_level = 1usize << args.dim;
    let (first, last, limit) = match span {
        Span::Levels(a, b) => (a, b, usize::MAX),
        Span::Count(n) => {
            let mut last = 0;
            let mut total = 1usize;
            while total < n {
                last += 1;
                total = total.saturating_add(per_level.saturating_pow(last as u32));
            }
            (0, last, n)
        }
    };
    let mix = MixMatrix::stored();
    let mut levels: Vec<(usize, Vec<Vec<BitString>>)> = Vec::new();
    let mut count = 0usize;
    for n in first..=last {
        let budget = DEFAULT_POINT_BUDGET.saturating_sub(count);
        let pts: Vec<Vec<BitString>> = if args.dim == 2 {
            let b = [coords[0].clone(), coords[1].clone()];
            map2d_level(&b, n, budget)?
                .into_iter()
                .map(Vec::from)
                .collect()
        } else {
            let b = [coords[0].clone(), coords[1].clone(), coords[2].clone()];
            map3d_level(&mix, &b, n, reading, budget)?
                .into_iter()
                .map(Vec::from)
                .collect()
        };
        count += pts.len();
        levels.push((n, pts));
    }
    let total = count.min(limit);
    r.meta(
        "base",
        &base
            .iter()
            .map(|&v| decimal(v))
            .collect::<Vec<_>>()
            .join(","),
    );
    r.meta("levels", &format!("{first}..{last}"));
    r.meta(
        "order",
        "levels ascending; within a level, radical inverse of interleaved label bits",
    );
    if args.dim == 3 {
        r.meta(
            "reading",
            if reading == Reading::Direct {
                "direct"
            } else {
                "composition"
            },
        );
        r.meta("mix_checksum", &format!("{:016x}", mix.checksum()));
    }
    r.meta("precision", &args.precision.to_string());
    r.meta("count", &total.to_string());
    r.meta("format", format_name(args.format));
    let axes = ["x", "y", "z"];
    if args.format == Format::Csv {
        r.line(&format!("index,level,{}", axes[..args.dim].join(",")));
    }
    let mut index = 0usize;
    for (n, pts) in &levels {
        for p in pts {
            if index == total {
                return Ok(());
            }
            let cols: Vec<String> = p
                .iter()
                .map(|c| match args.format {
                    Format::Bits => c.to_string(),
                    _ => decimal(c.to_unit()),
                })
                .collect();
            let line = match args.format {
                Format::Csv => format!("{index},{n},{}", cols.join(",")),
                _ => cols.join(" "),
            };
            r.line(&line);
            index += 1;
        }
    }
    Ok(())
}
