use pfvdc::discrepancy::growth_fit;

use crate::args::FitArgs;
use crate::io::{decimal, read_table, Report};
use crate::Failure;

pub fn run(args: &FitArgs) -> Result<(), Failure> {
    let (ns, ds) = read_table(&args.table)?;
    let fit = growth_fit(&ns, &ds, args.log_power)?;
    let mut r = Report::new("fit");
    r.meta("table", &args.table.display().to_string());
    r.meta("log_power", &decimal(fit.log_power));
    r.line("N,D,c_N");
    for ((n, d), c) in ns.iter().zip(&ds).zip(&fit.constants) {
        r.line(&format!("{n},{},{}", decimal(*d), decimal(*c)));
    }
    r.line(&format!("# max_c: {}", decimal(fit.max)));
    r.line(&format!("# slope: {}", decimal(fit.slope)));
    r.finish(args.out.out.as_ref())
}
