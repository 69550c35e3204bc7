//! Command-line front door for the prime constraint scans.

use primescan_cli::report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use primescan::constraints::{
    artin_scan, build_subbase_g, crt_compatible, dedekind_compare, fip_report, gpru_sweep,
    parse_constraint_file, parse_constraint_line, scan, sophie_germain_scan, ConstraintSpec,
};
use primescan::groups::{
    burnside_average_fixed_points, class_table, derangement_proportion, orbit_stabilizer_check,
    GroupModel,
};
use primescan::polyarith::{cyclotomic, discriminant, factor_type_mod_p, poly_resultant, IntPoly};
use primescan::primes::{sieve, SieveTable};
use primescan::Error;

use report::{
    ClassRow, FactorRow, Format, GermainPair, GroupSummary, OrbitCheck, PolySummary, ReportRecord,
    ResultantRow,
};

#[derive(Parser)]
#[command(name = "primescan", version, about = "Prime constraint sets, density scans, and factorization statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunArgs,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone)]
struct RunArgs {
    /// Scan bound N (defaults per subcommand)
    #[arg(long, global = true)]
    until: Option<u64>,

    /// Checkpoint bounds, comma-separated, sorted, ending at N
    #[arg(long, global = true, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,

    /// Output format
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Sieve cache file; loaded when valid for the bound, else built and written
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count primes satisfying every constraint simultaneously
    Scan {
        /// Constraint in the mini-language, repeatable (e.g. "U 3", "T -8")
        #[arg(short = 'c', long = "constraint")]
        constraints: Vec<String>,
        /// File with one constraint per line (# comments allowed)
        #[arg(long)]
        file: Option<PathBuf>,
        /// Treat the constraints as dependent: suppress the product prediction
        #[arg(long)]
        dependent: bool,
    },
    /// Build the subbase and check that intersection counts keep growing
    Fip {
        /// Upper index for the cyclotomic non-split constraints U_3..U_mmax
        #[arg(long, default_value_t = 12)]
        mmax: u64,
        /// Fundamental discriminants for the no-root constraints (never -8)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        dbar: Vec<i64>,
        /// Polynomial no-root constraint as "coeffs:model", repeatable
        #[arg(long = "poly", allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Scan for primes with m as a primitive root
    Artin {
        #[arg(short, long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Scan for primes p with (p-1)/2 prime
    Germain {
        /// Keep only p = 3 (mod 8)
        #[arg(long)]
        mod8: bool,
    },
    /// Exhaustive coprime-iff-primitive sweep over all (p, b) pairs
    Gpru,
    /// Compare factorization types of f against a group model's class table
    Dedekind {
        /// Polynomial coefficients, ascending degree
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
        poly: String,
        /// Group model: S<n>, A<n>, or semicolon-joined permutations
        #[arg(long)]
        group: String,
    },
    /// Print a group model's class table and derangement statistics
    Group {
        #[arg(long)]
        model: String,
        /// Also run the orbit-stabilizer check at this 1-based point
        #[arg(long)]
        point: Option<u32>,
    },
    /// Polynomial utilities: cyclotomics, discriminants, factor types
    Poly {
        /// Polynomial coefficients, ascending degree
        #[arg(short = 'f', long = "poly", allow_hyphen_values = true, conflicts_with = "cyclotomic")]
        poly: Option<String>,
        /// Produce the n-th cyclotomic polynomial instead
        #[arg(long)]
        cyclotomic: Option<u64>,
        /// Print the discriminant
        #[arg(long)]
        disc: bool,
        /// Factorization type modulo this prime
        #[arg(long)]
        factor_mod: Option<u64>,
        /// Resultant with this polynomial
        #[arg(long, allow_hyphen_values = true)]
        resultant_with: Option<String>,
    },
    /// Build a sieve and write it to the cache file
    SieveCache,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}

/// Resolve the bound and checkpoint list, enforcing "sorted, last = N".
fn resolve_bounds(run: &RunArgs, default_until: u64) -> Result<(u64, Vec<u64>), Error> {
    match (&run.until, &run.checkpoints) {
        (Some(n), None) => Ok((*n, vec![*n])),
        (None, None) => Ok((default_until, vec![default_until])),
        (until, Some(cps)) => {
            if cps.is_empty() {
                return Err(Error::Domain("empty checkpoint list".into()));
            }
            if cps.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Domain(
                    "checkpoints must be strictly increasing".into(),
                ));
            }
            let last = *cps.last().unwrap();
            if let Some(n) = until {
                if *n != last {
                    return Err(Error::Domain(format!(
                        "checkpoints must end at --until ({} != {})",
                        last, n
                    )));
                }
            }
            Ok((last, cps.clone()))
        }
    }
}

/// Load the sieve from the cache when it matches, else build it (and write
/// the cache if a path was given).
fn load_table(run: &RunArgs, limit: u64) -> Result<SieveTable, Error> {
    if let Some(path) = &run.cache {
        if let Ok(table) = SieveTable::read_cache(path, limit) {
            return Ok(table);
        }
        let table = sieve(limit)?;
        table.write_cache(path)?;
        return Ok(table);
    }
    sieve(limit)
}

fn echo_run(record: &mut ReportRecord, run: &RunArgs, n: u64, checkpoints: &[u64]) {
    record.param("until", n);
    let cps: Vec<String> = checkpoints.iter().map(|c| c.to_string()).collect();
    record.param("checkpoints", cps.join(","));
    if let Some(path) = &run.cache {
        record.param("cache", path.display());
    }
    // no randomness is observable in any output
    record.param("deterministic", "true");
}

fn run(cli: Cli) -> Result<String, Error> {
    let run = cli.run;
    match cli.command {
        Command::Scan { constraints, file, dependent } => {
            let mut specs: Vec<ConstraintSpec> = Vec::new();
            let mut echo: Vec<String> = Vec::new();
            if let Some(path) = &file {
                let content = std::fs::read_to_string(path)?;
                let parsed = parse_constraint_file(&content)?;
                echo.extend(parsed.iter().map(|s| s.describe()));
                specs.extend(parsed);
            }
            for line in &constraints {
                specs.push(parse_constraint_line(line)?);
                echo.push(specs.last().unwrap().describe());
            }
            if specs.is_empty() {
                return Err(Error::Domain(
                    "no constraints given (use -c or --file)".into(),
                ));
            }
            let (n, checkpoints) = resolve_bounds(&run, 100_000)?;
            let table = load_table(&run, n)?;
            let mut density = scan(&specs, n, &checkpoints, &table)?;
            let mut record = ReportRecord::new("scan");
            echo_run(&mut record, &run, n, &checkpoints);
            record.param("constraints", echo.join("; "));
            record.param("dependent", dependent);
            if dependent {
                density.predicted = None;
            }
            if let Ok(false) = crt_compatible(&specs) {
                record
                    .warnings
                    .push("congruence conditions are contradictory; predicted density 0".into());
            }
            record.density = Some(density);
            Ok(record.render(run.format))
        }
        Command::Fip { mmax, dbar, polys } => {
            let mut parsed_polys = Vec::new();
            for entry in &polys {
                let (coeffs, model) = entry.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("poly {:?}: expected \"coeffs:model\"", entry))
                })?;
                parsed_polys.push((coeffs.parse::<IntPoly>()?, model.parse::<GroupModel>()?));
            }
            let specs = build_subbase_g(mmax, &dbar, &parsed_polys)?;
            let checkpoints = match (&run.until, &run.checkpoints) {
                (None, None) => vec![10_000, 100_000, 1_000_000],
                _ => resolve_bounds(&run, 1_000_000)?.1,
            };
            let n = *checkpoints.last().unwrap();
            let table = load_table(&run, n)?;
            let fip = fip_report(&specs, &checkpoints, &table)?;
            let mut record = ReportRecord::new("fip");
            echo_run(&mut record, &run, n, &checkpoints);
            record.param("mmax", mmax);
            let ds: Vec<String> = dbar.iter().map(|d| d.to_string()).collect();
            record.param("dbar", ds.join(","));
            record.param("polys", polys.join("; "));
            record.param(
                "constraints",
                specs.iter().map(|s| s.describe()).collect::<Vec<_>>().join("; "),
            );
            record.verdicts.insert("fip".into(), fip.verdict.to_string());
            record.density = Some(fip.report);
            Ok(record.render(run.format))
        }
        Command::Artin { m } => {
            let (n, checkpoints) = resolve_bounds(&run, 100_000)?;
            let table = load_table(&run, n)?;
            let (density, members) = artin_scan(m, n, &checkpoints, &table)?;
            let mut record = ReportRecord::new("artin");
            echo_run(&mut record, &run, n, &checkpoints);
            record.param("m", m);
            record.density = Some(density);
            record.members = Some(members);
            Ok(record.render(run.format))
        }
        Command::Germain { mod8 } => {
            let (n, checkpoints) = resolve_bounds(&run, 100_000)?;
            let table = load_table(&run, n)?;
            let (density, pairs) = sophie_germain_scan(n, mod8, &checkpoints, &table)?;
            let mut record = ReportRecord::new("germain");
            echo_run(&mut record, &run, n, &checkpoints);
            record.param("mod8", mod8);
            record.density = Some(density);
            record.germain_pairs =
                Some(pairs.into_iter().map(|(p, q)| GermainPair { p, q }).collect());
            Ok(record.render(run.format))
        }
        Command::Gpru => {
            let (n, checkpoints) = resolve_bounds(&run, 10_000)?;
            let table = load_table(&run, n)?;
            let sweep = gpru_sweep(n, &table)?;
            let mut record = ReportRecord::new("gpru");
            echo_run(&mut record, &run, n, &checkpoints);
            record.verdicts.insert(
                "gpru".into(),
                if sweep.passed() { "PASS" } else { "FAIL" }.to_string(),
            );
            record.gpru = Some(sweep);
            Ok(record.render(run.format))
        }
        Command::Dedekind { poly, group } => {
            let f: IntPoly = poly.parse()?;
            let model: GroupModel = group.parse()?;
            let (n, checkpoints) = resolve_bounds(&run, 200_000)?;
            let table = load_table(&run, n)?;
            let dedekind = dedekind_compare(&f, &model, n, &table)?;
            let mut record = ReportRecord::new("dedekind");
            echo_run(&mut record, &run, n, &checkpoints);
            record.param("poly", &f);
            record.param("group", &model);
            record.dedekind = Some(dedekind);
            Ok(record.render(run.format))
        }
        Command::Group { model, point } => {
            let model: GroupModel = model.parse()?;
            let table = class_table(&model)?;
            let mut record = ReportRecord::new("group");
            record.param("model", &model);
            let orbit = match point {
                Some(pt) => Some(OrbitCheck {
                    point: pt,
                    holds: orbit_stabilizer_check(&model, pt)?,
                }),
                None => None,
            };
            record.group = Some(GroupSummary {
                model: model.to_string(),
                degree: model.degree(),
                order: table.order(),
                classes: table
                    .entries()
                    .iter()
                    .map(|(t, c)| ClassRow { cycle_type: t.to_string(), count: *c })
                    .collect(),
                derangement_proportion: derangement_proportion(&model)?.to_string(),
                burnside_average_fixed_points: burnside_average_fixed_points(&model)?.to_string(),
                orbit_stabilizer: orbit,
            });
            Ok(record.render(run.format))
        }
        Command::Poly { poly, cyclotomic: cyc, disc, factor_mod, resultant_with } => {
            let f: IntPoly = match (&poly, cyc) {
                (Some(s), None) => s.parse()?,
                (None, Some(n)) => cyclotomic(n)?,
                _ => {
                    return Err(Error::Domain(
                        "give exactly one of --poly or --cyclotomic".into(),
                    ))
                }
            };
            let mut record = ReportRecord::new("poly");
            if let Some(n) = cyc {
                record.param("cyclotomic", n);
            }
            let mut summary = PolySummary {
                poly: f.to_string(),
                degree: f.degree().map(|d| d as u64).unwrap_or(0),
                discriminant: None,
                factor_mod: None,
                resultant: None,
            };
            if disc {
                summary.discriminant = Some(discriminant(&f)?.to_string());
            }
            if let Some(p) = factor_mod {
                if !primescan::primes::is_prime_u64(p) {
                    return Err(Error::Domain(format!("{} is not prime", p)));
                }
                let ft = factor_type_mod_p(&f, p)?;
                summary.factor_mod = Some(FactorRow {
                    p,
                    squarefree: ft.squarefree_mod_p,
                    degrees: ft.degrees,
                });
            }
            if let Some(g) = resultant_with {
                let g: IntPoly = g.parse()?;
                summary.resultant = Some(ResultantRow {
                    with: g.to_string(),
                    value: poly_resultant(&f, &g)?.to_string(),
                });
            }
            record.poly = Some(summary);
            Ok(record.render(run.format))
        }
        Command::SieveCache => {
            let (n, _) = resolve_bounds(&run, 1_000_000)?;
            let Some(path) = &run.cache else {
                return Err(Error::Domain("sieve-cache needs --cache PATH".into()));
            };
            let table = sieve(n)?;
            table.write_cache(path)?;
            let mut record = ReportRecord::new("sieve-cache");
            record.param("until", n);
            record.param("cache", path.display());
            record.param("prime_count", table.prime_count(n)?);
            Ok(record.render(run.format))
        }
    }
}
