//! `isingvoa`: reproducible verification runs with JSON reports.
//!
//! Exit status: 0 when every check in the run passes, 1 when a check fails
//! (or a computation errors), 2 on usage errors such as unknown tags.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isingvoa::census::{hamming_model, IsingCensus};
use isingvoa::gf2code::BinaryCode;
use isingvoa::griess::{GriessAlgebra, GriessElement, Q};
use isingvoa::qchar::{self, Exp, SeriesView};
use isingvoa::rootlat::{sublattice_embedding, EmbeddingName};
use isingvoa::transpo::{self, classical};
use isingvoa::{registry, Error};

const DEFAULT_CUTOFF: i64 = 8;

#[derive(Parser, Debug)]
#[command(name = "isingvoa", version, about = "Ising vectors, σ-groups and commutant characters, checked exactly")]
struct Cli {
    /// Character depth above each leading exponent [default: 8, or $VOA_CUTOFF]
    #[arg(long, global = true)]
    cutoff: Option<i64>,

    /// Accepted for reproducibility scripts; no computation is randomized
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to a file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate Ising vectors of a code or lattice VOA
    Census {
        #[command(subcommand)]
        what: CensusCmd,
    },
    /// Order of the group generated by the σ-involutions of a census
    Group {
        /// Census tag (code, lattice, `m_<lattice>`, `uc`)
        #[arg(long)]
        census: String,
        /// Keep only points orthogonal to these named elements
        #[arg(long = "orthogonal-to")]
        orthogonal_to: Vec<String>,
    },
    /// Structure data and identities of the weight-2 Griess algebra
    Griess {
        /// Lattice tag, e.g. E8
        lattice: String,
    },
    /// q-series characters and decomposition identities
    Characters {
        #[command(subcommand)]
        what: CharactersCmd,
    },
    /// Fischer-space properties of a σ-involution set
    Fischer {
        #[arg(long)]
        census: String,
        #[arg(long = "orthogonal-to")]
        orthogonal_to: Vec<String>,
        /// Also report D^(1), D^(2) for the first non-commuting pair
        #[arg(long)]
        inductive: bool,
    },
    /// Inspect a binary code; `--emit` prints the `n k` text format
    Code {
        /// Code tag, e.g. rm24 or file:PATH
        tag: String,
        #[arg(long)]
        dual: bool,
        #[arg(long = "d-construction")]
        d_construction: Option<u8>,
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CensusCmd {
    /// Census of a code VOA
    Code { tag: String },
    /// Census of V_{√2R}^+, optionally restricted to a commutant
    Lattice {
        tag: String,
        #[arg(long = "orthogonal-to")]
        orthogonal_to: Vec<String>,
    },
    /// The 24 Ising vectors of V_{H8} with their frames
    Hamming,
}

#[derive(Subcommand, Debug)]
enum CharactersCmd {
    /// Check the decomposition identities
    Verify {
        /// Comma-separated subset of identities (empty string for none)
        #[arg(long, value_delimiter = ',')]
        identities: Option<Vec<String>>,
    },
    /// Print one character, e.g. minimal(1,1,1), vplus(E8), w(8,0,8), man(7,4), affine(2,1), m_e7
    Show { object: String },
}

/// A finished run: results plus named pass/fail checks.
struct Outcome {
    input: Value,
    results: Value,
    checks: Vec<(String, bool)>,
    /// Plain-text output that replaces the report (code emission).
    raw: Option<String>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) | Error::Parse(_) | Error::Lattice(_) | Error::OutOfRange(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Run = std::result::Result<Outcome, Failure>;

fn q_str(q: &Q) -> String {
    q.to_string()
}

fn exp_str(e: &Exp) -> String {
    e.to_string()
}

fn counts_json(c: &IsingCensus) -> Value {
    json!(c.counts_by_tag())
}

fn gram_histogram(c: &IsingCensus) -> Option<BTreeMap<String, usize>> {
    let mut h = BTreeMap::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            *h.entry(q_str(&c.gram(i, j).ok()?)).or_insert(0) += 1;
        }
    }
    Some(h)
}

/// Every realized point is an Ising vector; every known gram entry is 0, 1/32 or 1/4.
fn census_checks(c: &IsingCensus) -> Vec<(String, bool)> {
    let mut checks = Vec::new();
    if let Some(alg) = c.algebra() {
        let ok = (0..c.len()).all(|i| c.realization(i).is_ok_and(|e| alg.is_ising_candidate(e)));
        checks.push(("points_are_ising".to_string(), ok));
    }
    let allowed = [Q::from(0), Q::new(1, 32), Q::new(1, 4)];
    let ok = (0..c.len()).all(|i| (0..c.len()).all(|j| c.gram(i, j).map_or(true, |g| allowed.contains(&g))));
    checks.push(("gram_values".to_string(), ok));
    checks
}

fn census_code(tag: &str) -> Run {
    let code = registry::code(tag)?;
    let c = registry::census(tag, &[])?;
    let counts = c.counts_by_tag();
    let frames = counts.get("Frame").copied().unwrap_or(0);
    let hamming = counts.get("Hamming").copied().unwrap_or(0);
    let embeddings = code.hamming_embeddings()?.len();
    let mut checks = census_checks(&c);
    checks.push(("count_is_frames_plus_16_per_embedding".into(), c.len() == code.length() + 16 * embeddings));
    Ok(Outcome {
        input: json!({ "tag": tag }),
        results: json!({
            "count": c.len(),
            "frames": frames,
            "hamming_points": hamming,
            "embeddings": embeddings,
            "length": code.length(),
            "dim": code.dim(),
            "min_weight": code.min_weight()?,
            "realized": c.is_realized(),
            "gram_histogram": gram_histogram(&c),
        }),
        checks,
        raw: None,
    })
}

fn census_lattice(tag: &str, orth: &[String]) -> Run {
    let c = registry::census(tag, orth)?;
    Ok(Outcome {
        input: json!({ "tag": tag, "orthogonal_to": orth }),
        results: json!({
            "count": c.len(),
            "by_kind": counts_json(&c),
            "gram_histogram": gram_histogram(&c),
        }),
        checks: census_checks(&c),
        raw: None,
    })
}

fn census_hamming() -> Run {
    let m = hamming_model()?;
    let mut conj = Vec::new();
    let mut all_single = true;
    for a in 0..m.frames.len() {
        for b in a + 1..m.frames.len() {
            let single = (0..m.census.len()).find(|&p| {
                let mut img: Vec<usize> = m.frames[a].iter().map(|&q| m.sigma[p][q]).collect();
                img.sort();
                img == m.frames[b]
            });
            all_single &= single.is_some();
            conj.push(json!({ "from": a, "to": b, "sigma": single }));
        }
    }
    Ok(Outcome {
        input: json!({}),
        results: json!({
            "count": m.census.len(),
            "by_kind": counts_json(&m.census),
            "frames": m.frames,
            "conjugating_sigmas": conj,
        }),
        checks: vec![("three_frames".into(), m.frames.len() == 3), ("single_sigma_conjugacy".into(), all_single)],
        raw: None,
    })
}

/// Classical group orders that a σ-group order can be compared with.
fn identify(order: &num_bigint::BigUint) -> Vec<String> {
    let mut names = Vec::new();
    for n in 2..=6u32 {
        if classical::sp(n) == *order {
            names.push(format!("Sp{}(2)", 2 * n));
        }
        for (plus, s) in [(true, "+"), (false, "-")] {
            if classical::orthogonal(n, plus) == *order {
                names.push(format!("O{}{s}(2)", 2 * n));
            }
            if classical::omega(n, plus) == *order {
                names.push(format!("Omega{}{s}(2)", 2 * n));
            }
        }
    }
    let mut f = num_bigint::BigUint::from(1u32);
    for k in 1..=12u32 {
        f *= k;
        if f == *order && k > 2 {
            names.push(format!("S{k}"));
        }
    }
    names
}

fn group(tag: &str, orth: &[String]) -> Run {
    let c = registry::census(tag, orth)?;
    let sigmas = transpo::sigma_permutations(&c)?;
    let g = transpo::PermutationGroup::from_generators(c.len(), &sigmas);
    let order = g.order();
    let tt = transpo::is_3transposition(&sigmas);
    Ok(Outcome {
        input: json!({ "census": tag, "orthogonal_to": orth }),
        results: json!({
            "points": c.len(),
            "order": order.to_string(),
            "base_length": g.base().len(),
            "orbit_lengths": g.orbit_lengths(),
            "matches": identify(&order),
        }),
        checks: vec![("three_transposition".into(), tt.holds)],
        raw: None,
    })
}

fn fischer(tag: &str, orth: &[String], inductive: bool) -> Run {
    let c = registry::census(tag, orth)?;
    let sigmas = transpo::sigma_permutations(&c)?;
    let space = transpo::fischer_space(&sigmas)?;
    let symplectic = transpo::is_symplectic_type(&space);
    let tt = transpo::is_3transposition(&sigmas).holds;
    let mut results = json!({
        "points": space.points,
        "lines": space.lines.len(),
        "symplectic_type": symplectic,
        "perp_hypotheses": transpo::perp_hypotheses(&space),
    });
    if inductive {
        let y = (1..sigmas.len()).find(|&y| space.collinear(0, y));
        results["inductive"] = match y {
            Some(y) => {
                let ind = transpo::inductive_structure(&sigmas, 0, y)?;
                json!({
                    "x": 0, "y": y,
                    "d1_points": ind.d1.len(), "d1_order": ind.d1_order.to_string(),
                    "d2_points": ind.d2.len(), "d2_order": ind.d2_order.to_string(),
                })
            }
            None => Value::Null,
        };
    }
    Ok(Outcome {
        input: json!({ "census": tag, "orthogonal_to": orth, "inductive": inductive }),
        results,
        checks: vec![("three_transposition".into(), tt), ("symplectic_type".into(), symplectic)],
        raw: None,
    })
}

fn griess(tag: &str) -> Run {
    let lat = registry::lattice(tag)?;
    let alg = Arc::new(GriessAlgebra::build(&lat)?);
    let omega = alg.omega();
    let rank = alg.rank();
    let mut checks = vec![("omega_norm".to_string(), alg.inner(&omega, &omega) == Q::new(rank as i128, 2))];
    let mut results = json!({
        "dimension": alg.dimension(),
        "rank": rank,
        "roots": lat.roots().len(),
    });
    if lat.is_simple() {
        let wt = alg.conformal_wtilde()?;
        let s = alg.conformal_s()?;
        let comm = alg.commutant_weight2(&wt.element).len();
        results["coxeter_number"] = json!(lat.coxeter_number()?);
        results["wtilde_central_charge"] = json!(q_str(&wt.central_charge));
        results["s_central_charge"] = json!(q_str(&s.central_charge));
        results["commutant_dim"] = json!(comm);
        checks.push(("commutant_dim_is_half_roots".into(), comm == lat.roots().len() / 2));
        checks.push(("wtilde_s_orthogonal".into(), alg.product(&wt.element, &s.element).is_zero()));
    }
    let mut ids = BTreeMap::new();
    match lat.tag().as_str() {
        "E8" => {
            let c = |n: &str| registry::constraint(&alg, n);
            let (wt, pw, wp, we7) = (c("wtilde")?, c("phi_alpha0_wtilde")?, c("w_plus_alpha0")?, c("wtilde_e7")?);
            let lhs = alg.product(&wt, &pw);
            let rhs = GriessElement::lincomb(&[(Q::new(1, 4), &wt), (Q::new(1, 4), &pw), (Q::new(-1, 4), &wp)]);
            ids.insert("wtilde_times_phi_wtilde", lhs == rhs);
            let rhs = GriessElement::lincomb(&[(Q::new(4, 5), &wt), (Q::new(4, 5), &pw), (Q::new(-1, 5), &wp)]);
            ids.insert("wtilde_e7_from_u", we7 == rhs);
        }
        "E6" => {
            let emb = sublattice_embedding(EmbeddingName::A5A1InE6)?;
            let root = vec![2, 0, 0, 0, 0, 0, 0, -2];
            let one = Q::from(1);
            let w1 = GriessElement::lincomb(&[
                (one, &alg.wtilde_of(&emb.parts[0])?),
                (one, &alg.w_vector(&root, isingvoa::griess::Sign::Plus)?),
                (-one, &alg.wtilde_of(&lat)?),
            ]);
            let w2 = alg.w_vector(&root, isingvoa::griess::Sign::Minus)?;
            let c1 = alg.conformal(w1.clone()).map(|c| c.central_charge);
            let c2 = alg.conformal(w2.clone()).map(|c| c.central_charge);
            results["omega1_central_charge"] = json!(c1.as_ref().map(q_str).ok());
            results["omega2_central_charge"] = json!(c2.as_ref().map(q_str).ok());
            ids.insert("omega1_central_charge", c1 == Ok(Q::new(25, 28)));
            ids.insert("omega2_central_charge", c2 == Ok(Q::new(1, 2)));
            let parts = [alg.s_of(&emb.parts[0])?, w1, w2, alg.wtilde_of(&lat)?];
            let total = GriessElement::lincomb(&parts.iter().map(|p| (one, p)).collect::<Vec<_>>());
            let orth = (0..4).all(|i| (i + 1..4).all(|j| alg.product(&parts[i], &parts[j]).is_zero()));
            ids.insert("orthogonal_decomposition_of_omega", total == omega && orth);
        }
        _ => {}
    }
    for (k, v) in &ids {
        checks.push((k.to_string(), *v));
    }
    results["identities"] = json!(ids);
    Ok(Outcome { input: json!({ "lattice": tag }), results, checks, raw: None })
}

fn characters_verify(depth: i64, only: Option<Vec<String>>) -> Run {
    let names: Vec<&str> = match &only {
        Some(v) => v.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect(),
        None => qchar::IDENTITIES.to_vec(),
    };
    let report = qchar::verify_selected(&names, depth, isingvoa::par::Exec::default())?;
    let checks = report.identities.iter().map(|c| (c.identity.clone(), c.passed())).collect();
    Ok(Outcome {
        input: json!({ "cutoff": depth, "identities": names }),
        results: json!({ "count": report.identities.len(), "identities": report.identities }),
        checks,
        raw: None,
    })
}

fn parse_args(obj: &str) -> Result<(String, Vec<String>), Failure> {
    let t = obj.trim();
    match t.find('(') {
        Some(i) => {
            let body =
                t[i + 1..].strip_suffix(')').ok_or_else(|| Failure::Usage(format!("malformed object {obj:?}")))?;
            Ok((t[..i].to_ascii_lowercase(), body.split(',').map(|s| s.trim().to_string()).collect()))
        }
        None => Ok((t.to_ascii_lowercase(), Vec::new())),
    }
}

fn ints(args: &[String], k: usize) -> Result<Vec<i64>, Failure> {
    if args.len() != k {
        return Err(Failure::Usage(format!("expected {k} integer arguments")));
    }
    args.iter().map(|a| a.parse().map_err(|_| Failure::Usage(format!("bad integer {a:?}")))).collect()
}

fn characters_show(object: &str, cutoff: i64) -> Run {
    let cut = Exp::from(cutoff);
    let (name, args) = parse_args(object)?;
    let series = match name.as_str() {
        "minimal" => {
            let a = ints(&args, 3)?;
            qchar::minimal_character(a[0], a[1], a[2], cut)?
        }
        "vplus" | "lattice" => {
            let [tag] = args.as_slice() else { return Err(Failure::Usage("expected one lattice tag".into())) };
            let l = registry::lattice(tag)?;
            if name == "vplus" {
                qchar::vplus_character(&l, cut)
            } else {
                qchar::lattice_character(&l, None, cut)
            }
        }
        "w" => {
            let a = ints(&args, 3)?;
            qchar::w_character(a[0], a[1], a[2], cut)?.series
        }
        "man" => {
            let a = ints(&args, 2)?;
            qchar::man_character(a[0], a[1], cut)?
        }
        "m_e7" => qchar::e7_commutant_character(cut)?,
        "m_e6" => qchar::e6_commutant_character(cut)?,
        "affine" => {
            let a = ints(&args, 2)?;
            let ch = qchar::affine_sl2_character(a[0], a[1], cut)?;
            let slices: BTreeMap<String, Value> =
                ch.z_exponents().into_iter().map(|z| (z.to_string(), json!(SeriesView::from(&ch.slice(z))))).collect();
            return Ok(Outcome {
                input: json!({ "object": object, "cutoff": cutoff }),
                results: json!({ "z_slices": slices, "z_symmetric": ch.is_z_symmetric() }),
                checks: vec![("z_symmetric".into(), ch.is_z_symmetric())],
                raw: None,
            });
        }
        _ => return Err(Failure::Usage(format!("unknown character object {object:?}"))),
    };
    Ok(Outcome {
        input: json!({ "object": object, "cutoff": cutoff }),
        results: json!({
            "series": SeriesView::from(&series),
            "text": series.to_string(),
            "leading_exponent": series.offset().as_ref().map(exp_str),
        }),
        checks: vec![("nonnegative".into(), series.is_nonnegative())],
        raw: None,
    })
}

fn code_cmd(tag: &str, dual: bool, dc: Option<u8>, emit: bool) -> Run {
    let mut c: BinaryCode = registry::code(tag)?;
    if dual {
        c = c.dual();
    }
    if let Some(level) = dc {
        c = c.d_construction(level)?;
    }
    let raw = emit.then(|| c.to_text());
    let enumerable = c.dim() <= 24;
    Ok(Outcome {
        input: json!({ "tag": tag, "dual": dual, "d_construction": dc }),
        results: json!({
            "length": c.length(),
            "dim": c.dim(),
            "min_weight": if enumerable && c.dim() > 0 { Some(c.min_weight()?) } else { None },
            "weight_enumerator": if enumerable { Some(c.weight_enumerator()?) } else { None },
            "hamming_embeddings": c.hamming_embeddings()?.len(),
            "dual_dim": c.dual().dim(),
        }),
        checks: vec![("dual_involution".into(), c.dual().dual() == c)],
        raw,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Census { what: CensusCmd::Code { .. } } => "census code",
        Command::Census { what: CensusCmd::Lattice { .. } } => "census lattice",
        Command::Census { what: CensusCmd::Hamming } => "census hamming",
        Command::Group { .. } => "group",
        Command::Griess { .. } => "griess",
        Command::Characters { what: CharactersCmd::Verify { .. } } => "characters verify",
        Command::Characters { what: CharactersCmd::Show { .. } } => "characters show",
        Command::Fischer { .. } => "fischer",
        Command::Code { .. } => "code",
    }
}

fn resolve_cutoff(flag: Option<i64>) -> Result<i64, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("VOA_CUTOFF") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("VOA_CUTOFF={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_CUTOFF),
    }
}

fn dispatch(cli: Cli) -> Run {
    let cutoff = resolve_cutoff(cli.cutoff)?;
    match cli.command {
        Command::Census { what: CensusCmd::Code { tag } } => census_code(&tag),
        Command::Census { what: CensusCmd::Lattice { tag, orthogonal_to } } => census_lattice(&tag, &orthogonal_to),
        Command::Census { what: CensusCmd::Hamming } => census_hamming(),
        Command::Group { census, orthogonal_to } => group(&census, &orthogonal_to),
        Command::Griess { lattice } => griess(&lattice),
        Command::Characters { what: CharactersCmd::Verify { identities } } => characters_verify(cutoff, identities),
        Command::Characters { what: CharactersCmd::Show { object } } => characters_show(&object, cutoff),
        Command::Fischer { census, orthogonal_to, inductive } => fischer(&census, &orthogonal_to, inductive),
        Command::Code { tag, dual, d_construction, emit } => code_cmd(&tag, dual, d_construction, emit),
    }
}

fn render(format: Format, report: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Tsv => {
            let mut out = String::new();
            for key in ["command", "pass"] {
                out += &format!("{key}\t{}\n", report[key]);
            }
            if let Some(obj) = report["results"].as_object() {
                for (k, v) in obj {
                    out += &format!("{k}\t{v}\n");
                }
            }
            if let Some(checks) = report["checks"].as_array() {
                for c in checks {
                    out += &format!("check:{}\t{}\n", c["name"].as_str().unwrap_or(""), c["pass"]);
                }
            }
            out += &format!("wall_time_ms\t{}\n", report["wall_time_ms"]);
            out
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (format, output, name) = (cli.format, cli.output.clone(), command_name(&cli.command));
    let _ = cli.seed;
    match dispatch(cli) {
        Ok(out) => {
            let pass = out.checks.iter().all(|(_, ok)| *ok);
            let text = match out.raw {
                Some(raw) => raw,
                None => {
                    let checks: Vec<Value> =
                        out.checks.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect();
                    let report = json!({
                        "tool": "isingvoa",
                        "version": env!("CARGO_PKG_VERSION"),
                        "command": name,
                        "input": out.input,
                        "results": out.results,
                        "checks": checks,
                        "pass": pass,
                        "wall_time_ms": start.elapsed().as_millis() as u64,
                    });
                    render(format, &report)
                }
            };
            if let Err(e) = emit(&output, &text) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
