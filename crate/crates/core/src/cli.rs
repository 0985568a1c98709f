//! Command-line front end. `run` parses arguments, writes results to stdout
//! and returns the exit status: 0 on success, 1 when a check fails or a
//! computation is out of range, 2 on a usage error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::codes::{self, BinaryCode};
use crate::error::{Error, Result};
use crate::lattice::{self, Coset, Lattice};
use crate::liedata;
use crate::modforms;
use crate::qseries::{QSeries, GRID};
use crate::rational::{fmt_rat, parse_rat, parse_rat_list, rat, rat_to_json, Rank, Rat};
use crate::svoa::{self, CharacterPoly};

pub const PREC_ENV: &str = "SHADOWFORGE_PREC";
const DEFAULT_ORDER: i64 = 4;

#[derive(Parser, Debug)]
#[command(name = "shadowforge", version, about = "Exact shadow characters of SVOAs, lattices and codes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct PrecArg {
    /// Known q-order: series are printed below q^N (default from SHADOWFORGE_PREC, else 4).
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    prec: Option<i64>,
}

#[derive(Args, Debug)]
struct LatticeArg {
    /// Lattice file (first line n, then n rows) or builtin: z1..z24, e6, e7, e8, aN, dN, dNplus.
    #[arg(long, value_name = "FILE|NAME")]
    lattice: String,
    /// The file holds a Gram matrix instead of a basis.
    #[arg(long)]
    gram: bool,
}

#[derive(Args, Debug)]
struct PolyArg {
    /// Rank c, e.g. 16, 23.5 or 47/2.
    #[arg(long, allow_hyphen_values = true)]
    rank: String,
    /// Coefficients A_0..A_m of the character polynomial, e.g. "(1,0,0)".
    #[arg(long = "A", value_name = "LIST", conflicts_with = "dim1", required_unless_present = "dim1", allow_hyphen_values = true)]
    a: Option<String>,
    /// dim V_1, for the three-term polynomial with dim V_{1/2} = 0.
    #[arg(long, allow_hyphen_values = true)]
    dim1: Option<String>,
    /// The coefficients describe a VOA (its shadow is itself).
    #[arg(long, requires = "a")]
    voa: bool,
}

#[derive(Args, Debug)]
struct CodeArg {
    /// Code file ("n k" then k rows of bits) or builtin: rep2, e8code.
    #[arg(long, value_name = "FILE|NAME")]
    code: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print a named series: eta, theta-z, theta-e8, chi-half, chi8, chi-fermi-shadow.
    Qexp {
        name: String,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Theta series of a lattice coset.
    Theta {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Coset representative: ambient coordinates, or basis coordinates with --gram.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Characteristic vectors and the shadow theta series of a self-dual lattice.
    ShadowLattice {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Count characteristic vectors up to this norm (default n).
        #[arg(long)]
        max_norm: Option<String>,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// The character of V.
    Char {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// The shadow character, its minimal weight and leading dimension.
    Shadow {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Least dim V_1 and the matching shadow count when dim V_{1/2} = 0.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        rank: String,
    },
    /// Check the table of SVOAs meeting the dim V_1 bound.
    VerifyTable,
    /// Check the lattice corollary on a self-dual lattice.
    Corollary {
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Construction A lattice of a binary code.
    ConstructA {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Weights of the shadow of a self-dual code.
    CodeShadow {
        #[command(flatten)]
        code: CodeArg,
    },
}

/// What a subcommand produced.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownBuiltin(_) | Error::InvalidLabel(_) | Error::Dimension(_) => 2,
        _ => 1,
    }
}

/// Absolute grid cutoff for a q-order.
fn cutoff(p: &PrecArg) -> Result<i64> {
    let order = match p.prec {
        Some(n) => n,
        None => match std::env::var(PREC_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| usage(format!("{PREC_ENV} must be an integer, got {v:?}")))?,
            Err(_) => DEFAULT_ORDER,
        },
    };
    Ok(GRID * order)
}

fn parse_rank(s: &str) -> Result<Rank> {
    Rank::from_rat(&parse_rat(s)?).map_err(|e| usage(e.to_string()))
}

fn load_lattice(a: &LatticeArg) -> Result<Lattice> {
    if Path::new(&a.lattice).is_file() {
        let text = std::fs::read_to_string(&a.lattice).map_err(|e| usage(format!("{}: {e}", a.lattice)))?;
        Lattice::parse_text(&text, a.gram)
    } else {
        lattice::by_name(&a.lattice)
    }
}

fn load_code(a: &CodeArg) -> Result<BinaryCode> {
    if Path::new(&a.code).is_file() {
        let text = std::fs::read_to_string(&a.code).map_err(|e| usage(format!("{}: {e}", a.code)))?;
        BinaryCode::parse(&text)
    } else {
        BinaryCode::by_name(&a.code)
    }
}

fn load_poly(p: &PolyArg) -> Result<CharacterPoly> {
    let rank = parse_rank(&p.rank)?;
    match (&p.a, &p.dim1) {
        (Some(a), _) => CharacterPoly::new(rank, parse_rat_list(a)?, p.voa),
        (None, Some(d)) => svoa::three_term(rank, &parse_rat(d)?),
        (None, None) => Err(usage("one of --A or --dim1 is required")),
    }
}

fn named_series(name: &str, prec: i64) -> Result<QSeries> {
    Ok(match name {
        "eta" => modforms::eta(prec),
        "theta-z" => modforms::theta_z(prec),
        "theta-e8" => modforms::theta_e8(prec),
        "chi-half" => modforms::chi_half(prec),
        "chi8" => modforms::chi8(prec),
        "chi-fermi-shadow" => modforms::chi_fermi_shadow(prec),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    }
    .truncate(prec))
}

fn series_output(s: QSeries) -> Output {
    Output::ok(s.to_string(), s.to_json())
}

fn counts_text(counts: &std::collections::BTreeMap<Rat, u64>) -> String {
    counts.iter().map(|(k, v)| format!("{}:{v}", fmt_rat(k))).collect::<Vec<_>>().join(" ")
}

fn dispatch(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Qexp { name, prec } => Ok(series_output(named_series(name, cutoff(prec)?)?)),
        Cmd::Theta { lattice: la, shift, prec } => {
            let l = load_lattice(la)?;
            let co = match shift {
                None => Coset::zero(l),
                Some(s) if la.gram => Coset::new(l, parse_rat_list(s)?)?,
                Some(s) => Coset::from_ambient(l, &parse_rat_list(s)?)?,
            };
            Ok(series_output(lattice::theta(&co, cutoff(prec)?)?))
        }
        Cmd::ShadowLattice { lattice: la, max_norm, prec } => {
            let l = load_lattice(la)?;
            let max = match max_norm {
                Some(m) => parse_rat(m)?,
                None => rat(l.dim() as i64),
            };
            let chars = lattice::characteristic_vectors(&l, &max)?;
            let th = lattice::shadow_theta(&l, cutoff(prec)?)?;
            let text = format!(
                "char_min={} char_count={}\ncounts {}\nshadow_theta={th}",
                fmt_rat(&chars.min_norm),
                chars.min_count,
                counts_text(&chars.counts)
            );
            let json = json!({
                "char_min": rat_to_json(&chars.min_norm),
                "char_count": chars.min_count,
                "counts": lattice::counts_to_json(&chars.counts),
                "shadow_theta": th.to_json(),
            });
            Ok(Output::ok(text, json))
        }
        Cmd::Char { poly, prec } => {
            let p = load_poly(poly)?;
            let ch = svoa::character(&p, svoa::vacuum_exp(p.rank()) + cutoff(prec)?)?;
            Ok(Output::ok(ch.to_string(), json!({"poly": p.to_json(), "character": ch.to_json()})))
        }
        Cmd::Shadow { poly, prec } => {
            let p = load_poly(poly)?;
            // h(V') <= c/8 puts the leading term at or below q^{c/12}
            let r = svoa::shadow_report(&p, 2 * p.rank().twice() + cutoff(prec)?)?;
            let text = format!("h={} dim={}\n{}", fmt_rat(&r.h), fmt_rat(&r.dim_at_h), r.shadow_char);
            Ok(Output::ok(text, r.to_json()))
        }
        Cmd::Bounds { rank } => {
            let (dim1, count) = svoa::long_shadow_bounds(parse_rank(rank)?);
            let text = format!("dim1_min={} shadow_count={}", fmt_rat(&dim1), fmt_rat(&count));
            Ok(Output::ok(text, json!({"dim1_min": rat_to_json(&dim1), "shadow_count": rat_to_json(&count)})))
        }
        Cmd::VerifyTable => {
            let rows = liedata::verify_table();
            let text = rows
                .iter()
                .map(|r| {
                    format!(
                        "{} c={} dim1={} expected={} lie={} ({}){}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.rank,
                        r.stored,
                        fmt_rat(&r.expected),
                        r.labels_text(),
                        r.lie_sum,
                        if r.lattice_candidate { " lattice-candidate" } else { "" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let ok = rows.iter().all(|r| r.pass);
            Ok(Output { text, json: liedata::report_to_json(&rows), ok })
        }
        Cmd::Corollary { lattice: la } => {
            let r = lattice::corollary_check(&load_lattice(la)?)?;
            let text = format!(
                "n={} norm1={} norm2={} dim1={}\nchar_min={} char_count={}\npart1={}\npart2 applicable={} bound_met={} count_ok={}\n{}",
                r.n,
                r.norm1,
                r.norm2,
                fmt_rat(&r.dim_v1),
                fmt_rat(&r.char_min),
                r.char_count,
                r.part1,
                r.part2.applicable,
                r.part2.bound_met,
                r.part2.count_ok,
                if r.passes() { "PASS" } else { "FAIL" }
            );
            Ok(Output { text, json: r.to_json(), ok: r.passes() })
        }
        Cmd::ConstructA { code, prec } => {
            let c = load_code(code)?;
            let l = codes::construction_a(&c);
            let th = lattice::theta(&Coset::zero(l.clone()), cutoff(prec)?)?;
            let gram_text = l
                .gram()
                .iter()
                .map(|row| row.iter().map(fmt_rat).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            let text = format!(
                "{}\n{gram_text}\ndet={} self_dual={}\ntheta={th}",
                l.dim(),
                fmt_rat(&l.det()),
                l.is_self_dual()
            );
            let json = json!({
                "gram": l.gram().iter().map(|row| row.iter().map(rat_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "det": rat_to_json(&l.det()),
                "self_dual": l.is_self_dual(),
                "theta": th.to_json(),
            });
            Ok(Output::ok(text, json))
        }
        Cmd::CodeShadow { code } => {
            let w = codes::code_shadow_weights(&load_code(code)?)?;
            let text = w.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ");
            Ok(Output::ok(text, codes::weights_to_json(&w)))
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing to the given streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match dispatch(&cli.cmd) {
        Ok(o) => {
            let body = if cli.json { o.json.to_string() } else { o.text };
            let _ = writeln!(out, "{body}");
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
