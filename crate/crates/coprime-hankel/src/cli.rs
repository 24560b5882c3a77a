//! Command-line front end: verb-style subcommands over the library, with
//! plain-text output for single values and JSON for tables and reports.
//!
//! Exit codes: 0 on success, 1 when a `verify` check fails, 2 on invalid
//! input. Diagnostics go to the error stream, results to the output stream.

use crate::correspondence::{fiber, sigma, CoprimePair, PadePair};
use crate::enumeration::{
    self, brute_coprime_census_with, brute_hankel_census_with, count_coprime_tuples,
    count_hankel_by_rank, count_hankel_rank_at_most, count_stratum, count_stratum_rank,
    verify_sigma_with, SigmaReport, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::field::{parse_q, Field};
use crate::poly::Poly;
use crate::structured::{bezoutian, HankelMatrix};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "coprime-hankel",
    version,
    about = "Finite-field toolkit: Bezoutians, Hankel/Toeplitz matrices, and coprime-pair counting"
)]
struct Cli {
    /// Field specification: q=p, q=p^k, or q=p^k:c0,c1,...,ck
    #[arg(long, global = true)]
    field: Option<String>,

    /// Output format (default: text for single values, json for tables/reports)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker count for exhaustive enumerations
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Cap on the number of objects an enumeration may visit
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Expansion coefficients of v/u at infinity
    Expand {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        terms: usize,
    },
    /// Bezoutian matrix of u and v
    Bezout {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Matrix order (default: max degree of u and v)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Hankel matrix of the expansion of v/u
    Hankel {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Image of a coprime pair (f, g) under the surjection onto nonsingular
    /// Toeplitz matrices
    Sigma {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// All coprime pairs mapping onto a nonsingular Hankel matrix
    Fiber {
        /// Hankel matrix, e.g. H:q=2;n=2;a=1,0,1
        #[arg(long)]
        hankel: String,
    },
    /// Closed-form counts (exact, arbitrary precision)
    Count {
        /// Coprime m-tuples; operands: degrees=n1,n2,...
        #[arg(long)]
        coprime: bool,
        /// Hankel matrices of exact rank; operands: n=.. r=..
        #[arg(long = "hankel-rank")]
        hankel_rank: bool,
        /// Hankel matrices with leading-minor index k; operands: n=.. k=..
        #[arg(long)]
        stratum: bool,
        /// ... with rank at most r as well; operands: n=.. k=.. r=..
        #[arg(long = "stratum-rank")]
        stratum_rank: bool,
        /// Hankel matrices of rank at most r; operands: n=.. r=..
        #[arg(long = "rank-le")]
        rank_le: bool,
        /// key=value operands for the selected count
        operands: Vec<String>,
    },
    /// Exhaustive brute-force censuses
    Census {
        /// Hankel (rank, delta) census; operands: n=..
        #[arg(long)]
        hankel: bool,
        /// Coprime-tuple census by GCD degree; operands: degrees=n1,n2,...
        #[arg(long)]
        coprime: bool,
        operands: Vec<String>,
    },
    /// Exhaustive verification runs (exit 1 when a check fails)
    Verify {
        /// Check the coprime-pairs-onto-Toeplitz surjection; operands: n=..
        #[arg(long)]
        sigma: bool,
        operands: Vec<String>,
    },
}

/// Parses and runs one invocation. `args` excludes the program name.
pub fn run<I, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = String>,
    O: Write,
    E: Write,
{
    let argv = std::iter::once("coprime-hankel".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                0
            } else {
                let _ = write!(err, "{rendered}");
                2
            };
        }
    };
    match dispatch(&cli) {
        Ok((payload, code)) => {
            let _ = write!(out, "{payload}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let format = cli.format;
    match &cli.cmd {
        Cmd::Expand { u, v, terms } => cmd_expand(cli, u, v, *terms, format),
        Cmd::Bezout { u, v, n } => cmd_bezout(cli, u, v, *n, format),
        Cmd::Hankel { u, v } => cmd_hankel(cli, u, v, format),
        Cmd::Sigma { f, g } => cmd_sigma(cli, f, g, format),
        Cmd::Fiber { hankel } => cmd_fiber(cli, hankel, format),
        Cmd::Count {
            coprime,
            hankel_rank,
            stratum,
            stratum_rank,
            rank_le,
            operands,
        } => cmd_count(
            cli,
            &[
                ("coprime", *coprime),
                ("hankel-rank", *hankel_rank),
                ("stratum", *stratum),
                ("stratum-rank", *stratum_rank),
                ("rank-le", *rank_le),
            ],
            operands,
            format,
        ),
        Cmd::Census {
            hankel,
            coprime,
            operands,
        } => cmd_census(cli, *hankel, *coprime, operands, format),
        Cmd::Verify { sigma, operands } => cmd_verify(cli, *sigma, operands, format),
    }
}

fn require_field(cli: &Cli) -> Result<Field> {
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Error::Parse("missing --field".into()))?;
    Field::parse(spec)
}

/// Field string without the `q=` prefix, as used inside pair JSON.
fn field_str(field: &Field) -> String {
    field.to_string().trim_start_matches("q=").to_string()
}

fn parse_operands(operands: &[String], allowed: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for op in operands {
        let (key, value) = op
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value operand, got `{op}`")))?;
        if !allowed.contains(&key) {
            return Err(Error::Parse(format!(
                "unknown operand `{key}` (expected one of: {})",
                allowed.join(", ")
            )));
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate operand `{key}`")));
        }
    }
    Ok(map)
}

fn get_usize(map: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    map.get(key)
        .ok_or_else(|| Error::Parse(format!("missing operand `{key}=`")))?
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("operand `{key}` must be a nonnegative integer")))
}

fn get_degrees(map: &BTreeMap<String, String>) -> Result<Vec<usize>> {
    map.get("degrees")
        .ok_or_else(|| Error::Parse("missing operand `degrees=`".into()))?
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad degree `{t}`")))
        })
        .collect()
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_expand(
    cli: &Cli,
    u: &str,
    v: &str,
    terms: usize,
    format: Option<Format>,
) -> Result<(String, i32)> {
    let field = require_field(cli)?;
    let u = Poly::parse(&field, u)?;
    let v = Poly::parse(&field, v)?;
    let pair = PadePair::new(u, v)?;
    let coefficients: Vec<u64> = pair.expand(terms).iter().map(|e| e.code()).collect();
    let payload = match format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut line = coefficients
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            line.push('\n');
            line
        }
        Format::Json => {
            #[derive(Serialize)]
            struct ExpandJson {
                q: String,
                u: String,
                v: String,
                terms: usize,
                coefficients: Vec<u64>,
            }
            to_json_line(&ExpandJson {
                q: field_str(&field),
                u: pair.u().to_string(),
                v: pair.v().to_string(),
                terms,
                coefficients,
            })
        }
    };
    Ok((payload, 0))
}

fn cmd_bezout(
    cli: &Cli,
    u: &str,
    v: &str,
    n: Option<usize>,
    format: Option<Format>,
) -> Result<(String, i32)> {
    let field = require_field(cli)?;
    let u = Poly::parse(&field, u)?;
    let v = Poly::parse(&field, v)?;
    let n = n.unwrap_or_else(|| u.degree().unwrap_or(0).max(v.degree().unwrap_or(0)).max(1));
    let b = bezoutian(&u, &v, n)?;
    let payload = match format.unwrap_or(Format::Text) {
        Format::Text => format!("{b}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct BezoutJson {
                q: String,
                u: String,
                v: String,
                n: usize,
                matrix: String,
            }
            to_json_line(&BezoutJson {
                q: field_str(&field),
                u: u.to_string(),
                v: v.to_string(),
                n,
                matrix: b.to_string(),
            })
        }
    };
    Ok((payload, 0))
}

fn cmd_hankel(cli: &Cli, u: &str, v: &str, format: Option<Format>) -> Result<(String, i32)> {
    let field = require_field(cli)?;
    let u = Poly::parse(&field, u)?;
    let v = Poly::parse(&field, v)?;
    let pair = PadePair::new(u, v)?;
    let h = pair.hankel();
    let payload = match format.unwrap_or(Format::Text) {
        Format::Text => format!("{h}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct HankelJson {
                q: String,
                u: String,
                v: String,
                n: usize,
                hankel: String,
            }
            to_json_line(&HankelJson {
                q: field_str(&field),
                u: pair.u().to_string(),
                v: pair.v().to_string(),
                n: pair.n(),
                hankel: h.to_string(),
            })
        }
    };
    Ok((payload, 0))
}

fn cmd_sigma(cli: &Cli, f: &str, g: &str, format: Option<Format>) -> Result<(String, i32)> {
    let field = require_field(cli)?;
    let f_poly = Poly::parse(&field, f)?;
    let g_poly = Poly::parse(&field, g)?;
    let pair = CoprimePair::new(f_poly, g_poly)?;
    let t = sigma(&pair);
    let payload = match format.unwrap_or(Format::Text) {
        Format::Text => format!("{t}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct SigmaJson {
                q: String,
                u: String,
                v: String,
                n: usize,
                toeplitz: String,
            }
            to_json_line(&SigmaJson {
                q: field_str(&field),
                u: pair.f().to_string(),
                v: pair.g().to_string(),
                n: pair.n(),
                toeplitz: t.to_string(),
            })
        }
    };
    Ok((payload, 0))
}

fn cmd_fiber(cli: &Cli, hankel: &str, format: Option<Format>) -> Result<(String, i32)> {
    let h = HankelMatrix::parse(hankel)?;
    if let Some(spec) = cli.field.as_deref() {
        if &Field::parse(spec)? != h.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let pairs = fiber(&h)?;
    let q_str = field_str(h.field());
    let lambdas = h.field().elements();
    let payload = match format.unwrap_or(Format::Json) {
        Format::Text => {
            let mut s = String::new();
            for (lambda, p) in lambdas.zip(&pairs) {
                s.push_str(&format!("lambda={lambda} u={} v={}\n", p.f(), p.g()));
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct FiberEntry {
                lambda: u64,
                u: String,
                v: String,
                n: usize,
                q: String,
            }
            let entries: Vec<FiberEntry> = lambdas
                .zip(&pairs)
                .map(|(lambda, p)| FiberEntry {
                    lambda: lambda.code(),
                    u: p.f().to_string(),
                    v: p.g().to_string(),
                    n: p.n(),
                    q: q_str.clone(),
                })
                .collect();
            to_json_line(&entries)
        }
    };
    Ok((payload, 0))
}

fn cmd_count(
    cli: &Cli,
    kinds: &[(&str, bool)],
    operands: &[String],
    format: Option<Format>,
) -> Result<(String, i32)> {
    let selected: Vec<&str> = kinds
        .iter()
        .filter(|(_, on)| *on)
        .map(|&(k, _)| k)
        .collect();
    let [kind] = selected[..] else {
        return Err(Error::Parse(
            "count needs exactly one of --coprime, --hankel-rank, --stratum, --stratum-rank, --rank-le"
                .into(),
        ));
    };
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Error::Parse("missing --field".into()))?;
    let q = parse_q(spec)?;

    let mut degrees = None;
    let mut n = None;
    let mut k = None;
    let mut r = None;
    let count = match kind {
        "coprime" => {
            let map = parse_operands(operands, &["degrees"])?;
            let d = get_degrees(&map)?;
            let c = count_coprime_tuples(q, &d)?;
            degrees = Some(d);
            c
        }
        "hankel-rank" => {
            let map = parse_operands(operands, &["n", "r"])?;
            n = Some(get_usize(&map, "n")?);
            r = Some(get_usize(&map, "r")?);
            count_hankel_by_rank(q, n.unwrap(), r.unwrap())?
        }
        "stratum" => {
            let map = parse_operands(operands, &["n", "k"])?;
            n = Some(get_usize(&map, "n")?);
            k = Some(get_usize(&map, "k")?);
            count_stratum(q, n.unwrap(), k.unwrap())?
        }
        "stratum-rank" => {
            let map = parse_operands(operands, &["n", "k", "r"])?;
            n = Some(get_usize(&map, "n")?);
            k = Some(get_usize(&map, "k")?);
            r = Some(get_usize(&map, "r")?);
            count_stratum_rank(q, n.unwrap(), k.unwrap(), r.unwrap())?
        }
        "rank-le" => {
            let map = parse_operands(operands, &["n", "r"])?;
            n = Some(get_usize(&map, "n")?);
            r = Some(get_usize(&map, "r")?);
            count_hankel_rank_at_most(q, n.unwrap(), r.unwrap())?
        }
        _ => unreachable!("kinds are fixed above"),
    };

    let payload = match format.unwrap_or(Format::Text) {
        Format::Text => format!("{count}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct CountJson {
                q: u64,
                kind: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                degrees: Option<Vec<usize>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                n: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                k: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                r: Option<usize>,
                count: serde_json::Number,
            }
            to_json_line(&CountJson {
                q,
                kind: kind.to_string(),
                degrees,
                n,
                k,
                r,
                count: enumeration::big_to_number(&count),
            })
        }
    };
    Ok((payload, 0))
}

fn cmd_census(
    cli: &Cli,
    hankel: bool,
    coprime: bool,
    operands: &[String],
    format: Option<Format>,
) -> Result<(String, i32)> {
    let field = require_field(cli)?;
    let format = format.unwrap_or(Format::Json);
    match (hankel, coprime) {
        (true, false) => {
            let map = parse_operands(operands, &["n"])?;
            let n = get_usize(&map, "n")?;
            let census = brute_hankel_census_with(&field, n, cli.budget, cli.jobs)?;
            let payload = match format {
                Format::Json => to_json_line(&census),
                Format::Text => {
                    let mut s = String::new();
                    for (&(rank, delta), count) in census.cells() {
                        s.push_str(&format!("rank={rank} delta={delta} count={count}\n"));
                    }
                    s.push_str(&format!("total={}\n", census.total()));
                    s
                }
            };
            Ok((payload, 0))
        }
        (false, true) => {
            let map = parse_operands(operands, &["degrees"])?;
            let degrees = get_degrees(&map)?;
            let census = brute_coprime_census_with(&field, &degrees, cli.budget, cli.jobs)?;
            let payload = match format {
                Format::Json => to_json_line(&census),
                Format::Text => {
                    let mut s = String::new();
                    for (degree, count) in census.by_gcd_degree() {
                        s.push_str(&format!("gcd_degree={degree} count={count}\n"));
                    }
                    s.push_str(&format!("total={}\n", census.total()));
                    s
                }
            };
            Ok((payload, 0))
        }
        _ => Err(Error::Parse(
            "census needs exactly one of --hankel, --coprime".into(),
        )),
    }
}

fn cmd_verify(
    cli: &Cli,
    sigma_check: bool,
    operands: &[String],
    format: Option<Format>,
) -> Result<(String, i32)> {
    if !sigma_check {
        return Err(Error::Parse("verify needs --sigma".into()));
    }
    let field = require_field(cli)?;
    let map = parse_operands(operands, &["n"])?;
    let n = get_usize(&map, "n")?;
    let report = verify_sigma_with(&field, n, cli.budget)?;
    let payload = match format.unwrap_or(Format::Json) {
        Format::Json => to_json_line(&report),
        Format::Text => render_report_text(&report),
    };
    Ok((payload, if report.pass { 0 } else { 1 }))
}

fn render_report_text(r: &SigmaReport) -> String {
    format!(
        "q={}\nn={}\npairs={}\nimages={}\nsurjective={}\nall_images_nonsingular={}\n\
         fibers_uniform={}\nfiber_size={}\nfibers_reconstruct={}\npass={}\n",
        r.q,
        r.n,
        r.pairs,
        r.images,
        r.surjective,
        r.all_images_nonsingular,
        r.fibers_uniform,
        r.fiber_size,
        r.fibers_reconstruct,
        r.pass
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn count_prints_bare_number() {
        let (code, out, _) = run_cli(&["count", "--field", "q=2", "--hankel-rank", "n=3", "r=2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "12\n");
    }

    #[test]
    fn expand_prints_comma_list() {
        let (code, out, _) = run_cli(&[
            "expand",
            "--field",
            "q=2",
            "--u",
            "coeffs:1,1,1",
            "--v",
            "coeffs:0,1",
            "--terms",
            "4",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "1,1,0,1\n");
    }

    #[test]
    fn invalid_field_exits_2() {
        let (code, out, err) = run_cli(&["count", "--field", "q=6", "--hankel-rank", "n=3", "r=2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("prime"));
    }

    #[test]
    fn count_requires_exactly_one_kind() {
        let (code, _, err) = run_cli(&["count", "--field", "q=2", "n=3", "r=2"]);
        assert_eq!(code, 2);
        assert!(err.contains("exactly one"));
        let (code, _, _) = run_cli(&[
            "count",
            "--field",
            "q=2",
            "--stratum",
            "--coprime",
            "n=1",
            "k=1",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn unknown_operand_rejected() {
        let (code, _, err) = run_cli(&["count", "--field", "q=2", "--stratum", "n=2", "x=1"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown operand"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }
}
