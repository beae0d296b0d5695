//! `detzeta`: exact zeta functions, orbit classes, exceptional strata, and
//! the exhaustive finite-field oracle for determinantal jet schemes.
//!
//! Every run is fully determined by its parsed command line: repeated
//! invocations produce byte-identical output, including parallel oracle
//! runs (`--jobs` only changes how the exact shard counts are scheduled).
//!
//! Exit codes: 0 success/PASS, 1 FAIL verdicts, 2 usage errors, 3
//! budget/level errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use detzeta_core::orbits::{class_orbit_factored, parse_lambda};
use detzeta_core::strata::contact_level_policy;
use detzeta_core::{
    check_holomorphy, check_maximal_minors, check_monodromy_conjecture, contact_locus_class,
    count_contact, count_orbits, determinantal_resolution, eigenvalue_set, monodromy_zeta_at_point,
    motivic_zeta_rational, motivic_zeta_series, stratum_class, stratum_class_at_level,
    topological_zeta, twisted_topological_zeta, verify_class, CheckReport, ContactProfile,
    ContactTarget, Error, HolReport, OrbitIndex, PointClass, Result, StratumClass, Verdict,
};

#[derive(Parser)]
#[command(
    name = "detzeta",
    version,
    about = "Exact zeta functions and jet-orbit classes of determinantal varieties",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format (csv is census-only).
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for oracle sharding (1 = sequential; results are
    /// identical either way).
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ShapeArgs {
    /// Number of matrix rows.
    #[arg(long)]
    m: u32,
    /// Number of matrix columns.
    #[arg(long)]
    n: u32,
    /// Minor size: the ideal of r x r minors.
    #[arg(long)]
    r: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Topological zeta function Z_top(s) of the r-minor ideal.
    Zeta(ShapeArgs),
    /// Twisted topological zeta function Z_top^(d)(s).
    Twisted {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Twist order d >= 1 (d = 1 is the untwisted function).
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Motivic zeta function: rational strata form, or a T-series with --order.
    Motivic {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Expand the series through this T-order instead of the rational form.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Monodromy zeta at a point class (--rank with --q or --no-alpha), or the
    /// eigenvalue set of the shape when no point is given.
    Monodromy {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Rank of the evaluated matrix point h(e) (so i = rank + 1).
        #[arg(long)]
        rank: Option<u32>,
        /// Largest q with e in the closure of the alpha(C) stratum of column q.
        #[arg(long)]
        q: Option<u32>,
        /// The point lies in no alpha-stratum closure beyond the forced one.
        #[arg(long)]
        no_alpha: bool,
    },
    /// Closed-form orbit class [C_lambda^l] of a jet orbit.
    OrbitClass {
        /// Number of matrix rows.
        #[arg(long)]
        m: u32,
        /// Number of matrix columns.
        #[arg(long)]
        n: u32,
        /// Orbit index, e.g. "0,1,inf".
        #[arg(long)]
        lambda: String,
        /// Jet level l (default: the largest finite entry of lambda).
        #[arg(long)]
        level: Option<u32>,
        /// Also evaluate the class at L = q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Exceptional-stratum classes [E_J^o] of the resolution; with --lambda
    /// as a contact profile u, the contact-locus class of u instead.
    Strata {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Jet level (default: the stability policy level per stratum).
        #[arg(long)]
        level: Option<u32>,
        /// Contact multiplicity profile u_1,...,u_r (switches to contact mode).
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Exhaustive F_q oracle: full census (default), contact count
    /// (--r with --order), or symbolic-class verification (--lambda).
    Oracle {
        /// Number of matrix rows.
        #[arg(long)]
        m: u32,
        /// Number of matrix columns.
        #[arg(long)]
        n: u32,
        /// Jet level l (jets live over F_q[t]/(t^{l+1})).
        #[arg(long)]
        level: u32,
        /// Field size (prime).
        #[arg(long)]
        q: u64,
        /// Minor size for a contact count (needs --order).
        #[arg(long)]
        r: Option<u32>,
        /// Contact order target: an integer, or ">l" for "exceeds the level".
        #[arg(long)]
        order: Option<String>,
        /// Verify the symbolic class of this orbit index against the census.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Conjecture checkers over one shape (--m/--n/--r) or a full grid (--max).
    Check {
        /// Which conjecture to check.
        target: CheckTarget,
        /// Check every shape with r <= m <= n <= MAX (maximal: r = m).
        #[arg(long)]
        max: Option<u32>,
        /// Number of matrix rows (single-shape mode).
        #[arg(long)]
        m: Option<u32>,
        /// Number of matrix columns (single-shape mode).
        #[arg(long)]
        n: Option<u32>,
        /// Minor size (single-shape mode; maximal minors force r = m).
        #[arg(long)]
        r: Option<u32>,
        /// Largest twist order for the holomorphy checker.
        #[arg(long, default_value_t = 6)]
        d: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckTarget {
    /// Every real pole exponential is a monodromy eigenvalue.
    Monodromy,
    /// Z_top^(d) is holomorphic unless d divides an eigenvalue order.
    Holomorphy,
    /// Maximal minors: poles against the Bernstein-Sato roots.
    Maximal,
}

struct Out {
    text: String,
    failed: bool,
}

fn ok(text: String) -> Result<Out> {
    Ok(Out {
        text,
        failed: false,
    })
}

fn usage(msg: &str) -> Error {
    Error::InvalidArgument(msg.to_string())
}

fn reject_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(usage("csv output is only available for the oracle census"));
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::LevelTooSmall { .. } | Error::LevelInstability { .. } | Error::BudgetExceeded { .. } => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(u8::from(out.failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Out> {
    match &cli.cmd {
        Cmd::Zeta(shape) => cmd_zeta(shape, cli.format),
        Cmd::Twisted { shape, d } => cmd_twisted(shape, *d, cli.format),
        Cmd::Motivic { shape, order } => cmd_motivic(shape, *order, cli.format),
        Cmd::Monodromy {
            shape,
            rank,
            q,
            no_alpha,
        } => cmd_monodromy(shape, *rank, *q, *no_alpha, cli.format),
        Cmd::OrbitClass {
            m,
            n,
            lambda,
            level,
            q,
        } => cmd_orbit_class(*m, *n, lambda, *level, *q, cli.format),
        Cmd::Strata {
            shape,
            level,
            lambda,
        } => cmd_strata(shape, *level, lambda.as_deref(), cli.format),
        Cmd::Oracle {
            m,
            n,
            level,
            q,
            r,
            order,
            lambda,
        } => cmd_oracle(*m, *n, *level, *q, *r, order.as_deref(), lambda.as_deref(), cli.format),
        Cmd::Check {
            target,
            max,
            m,
            n,
            r,
            d,
        } => cmd_check(*target, *max, *m, *n, *r, *d, cli.format),
    }
}

fn shape_json(shape: &ShapeArgs) -> serde_json::Value {
    json!({"m": shape.m, "n": shape.n, "r": shape.r})
}

fn cmd_zeta(shape: &ShapeArgs, format: Format) -> Result<Out> {
    reject_csv(format)?;
    let z = topological_zeta(shape.m, shape.n, shape.r)?;
    match format {
        Format::Text => ok(format!("Z_top(s) = {z}\n")),
        Format::Json => {
            let poles: Vec<_> = z
                .poles()
                .into_iter()
                .map(|((n, nu), e)| json!({"N": n, "nu": nu, "e": e}))
                .collect();
            let v = json!({"shape": shape_json(shape), "zeta": z.to_string(), "poles": poles});
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

fn cmd_twisted(shape: &ShapeArgs, d: u32, format: Format) -> Result<Out> {
    reject_csv(format)?;
    let z = twisted_topological_zeta(shape.m, shape.n, shape.r, d)?;
    match format {
        Format::Text => ok(format!("Z_top^({d})(s) = {z}\n")),
        Format::Json => {
            let v = json!({"shape": shape_json(shape), "d": d, "zeta": z.to_string()});
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

fn subset_label(subset: &[u32]) -> String {
    let inner: Vec<String> = subset.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn pairs_line(pairs: &[(u32, u32)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(n, nu)| format!("({n},{nu})")).collect();
    format!("pairs: (N,nu) = {}", parts.join(", "))
}

fn stratum_line(s: &StratumClass) -> Result<String> {
    let chi = s.value.euler()?;
    Ok(format!(
        "[E^o_{}] = {}  (level {}, chi {})",
        subset_label(&s.subset),
        s.value,
        s.witnessed_level,
        chi
    ))
}

fn cmd_motivic(shape: &ShapeArgs, order: Option<u32>, format: Format) -> Result<Out> {
    reject_csv(format)?;
    if let Some(order) = order {
        let coeffs = motivic_zeta_series(shape.m, shape.n, shape.r, order)?;
        return match format {
            Format::Text => {
                let mut text = format!(
                    "Z_mot series for (m,n,r) = ({},{},{}) to order {order}\n",
                    shape.m, shape.n, shape.r
                );
                for (k, c) in coeffs.iter().enumerate() {
                    let _ = writeln!(text, "[T^{k}] = {c}");
                }
                ok(text)
            }
            Format::Json => {
                let v = json!({
                    "shape": shape_json(shape),
                    "order": order,
                    "coefficients": coeffs,
                });
                ok(format!("{v}\n"))
            }
            Format::Csv => unreachable!(),
        };
    }
    let mz = motivic_zeta_rational(shape.m, shape.n, shape.r)?;
    match format {
        Format::Text => {
            let mut text = format!(
                "Z_mot strata form for (m,n,r) = ({},{},{})\n{}\n",
                shape.m,
                shape.n,
                shape.r,
                pairs_line(&mz.pairs.pairs)
            );
            for s in &mz.strata {
                let _ = writeln!(text, "{}", stratum_line(s)?);
            }
            ok(text)
        }
        Format::Json => {
            let v = json!({
                "shape": shape_json(shape),
                "pairs": mz.pairs.pairs,
                "strata": mz.strata,
            });
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

fn cmd_monodromy(
    shape: &ShapeArgs,
    rank: Option<u32>,
    q: Option<u32>,
    no_alpha: bool,
    format: Format,
) -> Result<Out> {
    reject_csv(format)?;
    let Some(rank) = rank else {
        if q.is_some() || no_alpha {
            return Err(usage("--q/--no-alpha describe a point class and need --rank"));
        }
        let eig = eigenvalue_set(shape.m, shape.n, shape.r)?;
        let strings: Vec<String> = eig.into_iter().map(|(k, a)| format!("{k}/{a}")).collect();
        return match format {
            Format::Text => ok(format!("eigenvalues: {}\n", strings.join(", "))),
            Format::Json => {
                let v = json!({"eigenvalues": strings});
                ok(format!("{v}\n"))
            }
            Format::Csv => unreachable!(),
        };
    };
    let q = match (q, no_alpha) {
        (Some(q), false) => Some(q),
        (None, true) => None,
        (None, false) => {
            return Err(usage("a point class needs --q COLUMN or --no-alpha"));
        }
        (Some(_), true) => {
            return Err(usage("--q conflicts with --no-alpha"));
        }
    };
    let point = PointClass::new(shape.m, shape.n, shape.r, rank + 1, q)?;
    let z = monodromy_zeta_at_point(&point)?;
    match format {
        Format::Text => ok(format!("Z_mon = {z}\n")),
        Format::Json => {
            let v = json!({
                "shape": shape_json(shape),
                "point": {"rank": rank, "i": rank + 1, "q": q},
                "zeta": z.to_string(),
            });
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

fn parse_orbit_index(lambda: &str, level: Option<u32>) -> Result<OrbitIndex> {
    match level {
        Some(l) => OrbitIndex::new(parse_lambda(lambda)?, l),
        None => lambda.parse(),
    }
}

fn cmd_orbit_class(
    m: u32,
    n: u32,
    lambda: &str,
    level: Option<u32>,
    q: Option<u64>,
    format: Format,
) -> Result<Out> {
    reject_csv(format)?;
    let idx = parse_orbit_index(lambda, level)?;
    let factored = class_orbit_factored(m, n, &idx)?;
    let class = factored.to_lclass();
    match format {
        Format::Text => {
            let mut text = format!("{factored}\n");
            if let Some(q) = q {
                let _ = writeln!(text, "at L = {q}: {}", class.eval(q)?);
            }
            ok(text)
        }
        Format::Json => {
            let mut v = json!({
                "m": m,
                "n": n,
                "level": idx.level(),
                "lambda": idx,
                "class": factored.to_string(),
                "fraction": class,
                "euler": class.euler()?.to_string(),
            });
            if let Some(q) = q {
                v["q"] = json!(q);
                v["value"] = json!(class.eval(q)?.to_string());
            }
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

fn parse_profile(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad contact profile entry {t:?}")))
        })
        .collect()
}

fn cmd_strata(
    shape: &ShapeArgs,
    level: Option<u32>,
    lambda: Option<&str>,
    format: Format,
) -> Result<Out> {
    reject_csv(format)?;
    if let Some(lambda) = lambda {
        let u = ContactProfile::new(parse_profile(lambda)?);
        let res = determinantal_resolution(shape.m, shape.n, shape.r)?;
        let l = level.unwrap_or_else(|| contact_level_policy(&res, &u));
        let class = contact_locus_class(shape.m, shape.n, shape.r, l, &u)?;
        return match format {
            Format::Text => ok(format!("contact locus u = ({lambda}), level {l}: {class}\n")),
            Format::Json => {
                let v = json!({
                    "shape": shape_json(shape),
                    "u": u.u(),
                    "level": l,
                    "class": class,
                });
                ok(format!("{v}\n"))
            }
            Format::Csv => unreachable!(),
        };
    }
    let res = determinantal_resolution(shape.m, shape.n, shape.r)?;
    let mut strata = Vec::new();
    for mask in 0u32..(1 << res.r()) {
        let subset: Vec<u32> = (1..=res.r()).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let s = match level {
            Some(l) => stratum_class_at_level(shape.m, shape.n, shape.r, &subset, l)?,
            None => stratum_class(shape.m, shape.n, shape.r, &subset)?,
        };
        strata.push(s);
    }
    match format {
        Format::Text => {
            let mut text = format!(
                "strata for (m,n,r) = ({},{},{})\n{}\n",
                shape.m,
                shape.n,
                shape.r,
                pairs_line(&res.pairs)
            );
            for s in &strata {
                let _ = writeln!(text, "{}", stratum_line(s)?);
            }
            ok(text)
        }
        Format::Json => {
            let v = json!({
                "shape": shape_json(shape),
                "pairs": res.pairs,
                "strata": strata,
            });
            ok(format!("{v}\n"))
        }
        Format::Csv => unreachable!(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    m: u32,
    n: u32,
    level: u32,
    q: u64,
    r: Option<u32>,
    order: Option<&str>,
    lambda: Option<&str>,
    format: Format,
) -> Result<Out> {
    match (lambda, r, order) {
        (Some(lambda), None, None) => {
            reject_csv(format)?;
            let idx = parse_orbit_index(lambda, Some(level))?;
            let verdict = verify_class(&idx, m, n, q)?;
            match format {
                Format::Text => {
                    let text = format!(
                        "verify lambda = {} (m={m}, n={n}, l={level}, q={q}): {verdict}\n",
                        verdict.lambda
                    );
                    Ok(Out {
                        text,
                        failed: !verdict.pass,
                    })
                }
                Format::Json => {
                    let text = format!("{}\n", serde_json::to_string(&verdict).expect("serialize"));
                    Ok(Out {
                        text,
                        failed: !verdict.pass,
                    })
                }
                Format::Csv => unreachable!(),
            }
        }
        (None, Some(r), Some(order)) => {
            reject_csv(format)?;
            let target: ContactTarget = order.parse()?;
            let count = count_contact(m, n, level, q, r, target)?;
            match format {
                Format::Text => ok(format!(
                    "contact jets with order {target} along I_{r} (m={m}, n={n}, l={level}, q={q}): {count}\n"
                )),
                Format::Json => {
                    let v = json!({
                        "m": m, "n": n, "l": level, "q": q, "r": r,
                        "target": target.to_string(),
                        "count": count,
                    });
                    ok(format!("{v}\n"))
                }
                Format::Csv => unreachable!(),
            }
        }
        (None, None, None) => {
            let census = count_orbits(m, n, level, q)?;
            match format {
                Format::Text => {
                    let mut text = format!("census m={m} n={n} l={level} q={q}\n");
                    for (idx, count) in census.iter() {
                        let _ = writeln!(text, "{idx}: {count}");
                    }
                    let _ = writeln!(text, "total: {}", census.total());
                    ok(text)
                }
                Format::Csv => ok(census.to_csv()),
                Format::Json => ok(format!(
                    "{}\n",
                    serde_json::to_string(&census).expect("serialize")
                )),
            }
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            Err(usage("a contact count needs both --r and --order"))
        }
        (Some(_), _, _) => Err(usage("--lambda (verify) excludes --r/--order (contact count)")),
    }
}

fn fmt_shape(rep: &CheckReport) -> String {
    format!("({},{},{})", rep.shape.m, rep.shape.n, rep.shape.r)
}

fn monodromy_report_text(header: &str, rep: &CheckReport) -> String {
    let mut text = format!("{header}\n");
    for p in &rep.poles {
        let status = if p.actual { "actual" } else { "cancels" };
        let _ = writeln!(text, "pole s0 = {} (N={}, nu={}, {status})", p.s0, p.n, p.nu);
    }
    let _ = writeln!(text, "eigenvalues: {}", rep.eigenvalues.join(", "));
    let _ = writeln!(text, "verdict: {}", rep.verdict);
    text
}

fn holomorphy_report_text(rep: &HolReport) -> String {
    let mut text = format!(
        "check holomorphy ({},{},{}) (d <= {})\n",
        rep.shape.m, rep.shape.n, rep.shape.r, rep.d_max
    );
    for e in &rep.entries {
        let what = if e.holds { "holds" } else { "FAILS" };
        let _ = writeln!(text, "d={}: {what}", e.d);
    }
    let _ = writeln!(text, "verdict: {}", rep.verdict);
    text
}

fn cmd_check(
    target: CheckTarget,
    max: Option<u32>,
    m: Option<u32>,
    n: Option<u32>,
    r: Option<u32>,
    d: u32,
    format: Format,
) -> Result<Out> {
    reject_csv(format)?;
    match (max, m, n) {
        (Some(max), None, None) => {
            if r.is_some() {
                return Err(usage("--max (grid mode) excludes --m/--n/--r"));
            }
            check_grid(target, max, d, format)
        }
        (None, Some(m), Some(n)) => check_single(target, m, n, r, d, format),
        _ => Err(usage(
            "check needs either --max MAX (grid) or --m/--n (single shape)",
        )),
    }
}

fn check_single(
    target: CheckTarget,
    m: u32,
    n: u32,
    r: Option<u32>,
    d: u32,
    format: Format,
) -> Result<Out> {
    match target {
        CheckTarget::Monodromy => {
            let r = r.ok_or_else(|| usage("check monodromy needs --r"))?;
            let rep = check_monodromy_conjecture(m, n, r)?;
            let failed = rep.verdict == Verdict::Fail;
            let text = match format {
                Format::Text => {
                    monodromy_report_text(&format!("check monodromy {}", fmt_shape(&rep)), &rep)
                }
                Format::Json => format!("{}\n", serde_json::to_string(&rep).expect("serialize")),
                Format::Csv => unreachable!(),
            };
            Ok(Out { text, failed })
        }
        CheckTarget::Holomorphy => {
            let r = r.ok_or_else(|| usage("check holomorphy needs --r"))?;
            let rep = check_holomorphy(m, n, r, d)?;
            let failed = rep.verdict == Verdict::Fail;
            let text = match format {
                Format::Text => holomorphy_report_text(&rep),
                Format::Json => format!("{}\n", serde_json::to_string(&rep).expect("serialize")),
                Format::Csv => unreachable!(),
            };
            Ok(Out { text, failed })
        }
        CheckTarget::Maximal => {
            if let Some(r) = r {
                if r != m.min(n) {
                    return Err(usage("check maximal is the r = min(m,n) case; drop --r"));
                }
            }
            let rep = check_maximal_minors(m, n)?;
            let failed = rep.verdict == Verdict::Fail;
            let text = match format {
                Format::Text => {
                    let b = detzeta_core::bernstein_sato_maximal(m.min(n), m.max(n))?;
                    let header = format!("check maximal ({m},{n})\nb(s) = {b}");
                    monodromy_report_text(&header, &rep)
                }
                Format::Json => format!("{}\n", serde_json::to_string(&rep).expect("serialize")),
                Format::Csv => unreachable!(),
            };
            Ok(Out { text, failed })
        }
    }
}

fn check_grid(target: CheckTarget, max: u32, d: u32, format: Format) -> Result<Out> {
    if max == 0 {
        return Err(usage("--max must be at least 1"));
    }
    let mut rows = Vec::new();
    let mut failed = false;
    match target {
        CheckTarget::Monodromy | CheckTarget::Holomorphy => {
            for m in 1..=max {
                for n in m..=max {
                    for r in 1..=m {
                        match target {
                            CheckTarget::Monodromy => {
                                let rep = check_monodromy_conjecture(m, n, r)?;
                                failed |= rep.verdict == Verdict::Fail;
                                rows.push((format!("({m},{n},{r})"), rep.verdict, json!(rep)));
                            }
                            CheckTarget::Holomorphy => {
                                let rep = check_holomorphy(m, n, r, d)?;
                                failed |= rep.verdict == Verdict::Fail;
                                rows.push((format!("({m},{n},{r})"), rep.verdict, json!(rep)));
                            }
                            CheckTarget::Maximal => unreachable!(),
                        }
                    }
                }
            }
        }
        CheckTarget::Maximal => {
            for m in 1..=max {
                for n in m..=max {
                    let rep = check_maximal_minors(m, n)?;
                    failed |= rep.verdict == Verdict::Fail;
                    rows.push((format!("({m},{n})"), rep.verdict, json!(rep)));
                }
            }
        }
    }
    let name = match target {
        CheckTarget::Monodromy => "monodromy",
        CheckTarget::Holomorphy => "holomorphy",
        CheckTarget::Maximal => "maximal",
    };
    let verdict = if failed { Verdict::Fail } else { Verdict::Pass };
    match format {
        Format::Text => {
            let mut text = match target {
                CheckTarget::Holomorphy => format!("check {name} grid max={max} (d <= {d})\n"),
                _ => format!("check {name} grid max={max}\n"),
            };
            for (label, v, _) in &rows {
                let _ = writeln!(text, "{label}: {v}");
            }
            let _ = writeln!(text, "verdict: {verdict}");
            Ok(Out { text, failed })
        }
        Format::Json => {
            let grid: Vec<serde_json::Value> = rows.into_iter().map(|(_, _, v)| v).collect();
            let mut v = json!({
                "target": name,
                "max": max,
                "grid": grid,
                "verdict": verdict,
            });
            if matches!(target, CheckTarget::Holomorphy) {
                v["d_max"] = json!(d);
            }
            Ok(Out {
                text: format!("{v}\n"),
                failed,
            })
        }
        Format::Csv => unreachable!(),
    }
}
