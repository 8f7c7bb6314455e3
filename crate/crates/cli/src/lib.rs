//! Command-line front end. [`run`] is the whole program; `main` only prints
//! its output and exits with its code.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use parahoric::io;
use parahoric::rational::{fmt_q, parse_q, parse_q_list};
use parahoric::seriesgroup::sample_member;
use parahoric::{
    ApartmentPoint, BoundedSet, ConcaveMap, ConcaveTuple, Error, FacetScaling, FibreRootDatum, Q, Result,
    RootSystem, SampleParams, TruncatedLaurentMatrix, ValuationPattern,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "parahoric", version, about = "Concave functions, apartments and parahoric data on root systems")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Dynkin type such as A2, B3 or G2
    #[arg(value_name = "TYPE")]
    dynkin: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the roots in canonical order
    Roots(TypeArg),
    /// Coxeter number, residue-characteristic bound and faithful dimension
    Constants(TypeArg),
    /// Root values r(θ) and m_r(θ); several --theta give a summed row
    Mvals {
        #[command(flatten)]
        ty: TypeArg,
        /// Coweight coordinates "a,b,..." or a JSON array; repeatable
        #[arg(long, required = true, allow_hyphen_values = true)]
        theta: Vec<String>,
    },
    /// m_r(Ω) for a bounded set
    Msets {
        #[command(flatten)]
        ty: TypeArg,
        /// Points separated by ';', or a JSON array of points
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Alcove vertices θ_α with d_α
    Vertices(TypeArg),
    /// Barycenter of a facet given by affine nodes (0 is α₀)
    Barycenter {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, value_delimiter = ',', required = true)]
        nodes: Vec<usize>,
    },
    /// Representative of θ in the closed fundamental alcove
    Reduce {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Test concavity and report the first violated pair
    ConcaveCheck {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        concave: String,
    },
    /// Type I/II/III classification with a witness
    Classify {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        concave: String,
    },
    /// Optimal concave regularization f′
    Fprime {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        concave: String,
    },
    /// Depth filtration levels at θ
    Moyprasad {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        depth: String,
    },
    /// SL_m valuation pattern of a tuple, or of a depth filtration
    Pattern {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, conflicts_with_all = ["theta", "depth"], required_unless_present = "theta")]
        tuple: Option<String>,
        #[arg(long, requires = "depth", allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        depth: Option<String>,
    },
    /// Membership of a matrix in a pattern
    Member {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        pattern: String,
    },
    /// Product of two matrices
    Multiply {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Seeded random member of a pattern
    Sample {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        cap: u32,
        #[arg(long, default_value_t = 0)]
        pole_cap: u32,
        #[arg(long, default_value_t = 6)]
        generators: usize,
        #[arg(long, default_value_t = 3)]
        coeff_range: i64,
        #[arg(long, default_value_t = 3)]
        max_terms: usize,
    },
    /// Set every variable equal to t
    Diag {
        #[arg(long)]
        matrix: String,
    },
    /// Substitute t = z_1⋯z_n in a one-variable matrix
    Embed {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: usize,
    },
    /// Closed-fibre roots of a concave map
    Fibre {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        concave: String,
    },
    /// Roots integral at θ
    Phitheta {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Fibre over the rescaled vertices of a facet (simple-root labels 1..=rank)
    Facet {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value = "vertex")]
        scaling: String,
        #[arg(long, value_delimiter = ',', required = true)]
        nodes: Vec<usize>,
    },
    /// Fibre of a sub-sum of a tuple (0-based indices)
    Subdiag {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        tuple: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Component points and node fibres for a μ_d action of type τ
    Mckay {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        d: i64,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        tau: Vec<i64>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command, cli.format) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Output { code: 0, stdout: text, stderr: String::new() }
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
            Output { code, stdout: String::new(), stderr: format!("{}: {e}\n", e.name()) }
        }
    }
}

/// Fixed-width rendering: the first row is the header, columns are
/// left-aligned and separated by two spaces.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Reads `@path` or returns the argument itself.
fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn json_arg(arg: &str) -> Result<Value> {
    io::parse(&read_arg(arg)?)
}

fn system(ty: &TypeArg) -> Result<RootSystem> {
    RootSystem::from_name(&ty.dynkin)
}

fn point_arg(rs: &RootSystem, arg: &str) -> Result<ApartmentPoint> {
    let text = read_arg(arg)?;
    if text.trim_start().starts_with('[') {
        return io::point_from_json(rs.dynkin(), &io::parse(&text)?);
    }
    let coords = parse_q_list(&text)?;
    io::point_from_json(rs.dynkin(), &Value::Array(coords.iter().map(|x| Value::String(fmt_q(x))).collect()))
}

fn set_arg(rs: &RootSystem, arg: &str) -> Result<BoundedSet> {
    let text = read_arg(arg)?;
    if text.trim_start().starts_with('[') {
        return io::set_from_json(rs.dynkin(), &io::parse(&text)?);
    }
    BoundedSet::new(text.split(';').map(|p| point_arg(rs, p.trim())).collect::<Result<_>>()?)
}

fn check_type(rs: &RootSystem, found: parahoric::DynkinType) -> Result<()> {
    if found != rs.dynkin() {
        return Err(Error::RankMismatch { expected: rs.dynkin().to_string(), found: found.to_string() });
    }
    Ok(())
}

fn concave_arg(rs: &RootSystem, arg: &str) -> Result<ConcaveMap> {
    let f = io::concave_from_json(&json_arg(arg)?)?;
    check_type(rs, f.dynkin)?;
    Ok(f)
}

fn tuple_arg(rs: &RootSystem, arg: &str) -> Result<ConcaveTuple> {
    let fs = io::tuple_from_json(&json_arg(arg)?)?;
    check_type(rs, fs.dynkin())?;
    Ok(fs)
}

fn matrix_arg(arg: &str) -> Result<TruncatedLaurentMatrix> {
    io::matrix_from_json(&json_arg(arg)?)
}

fn pretty(v: &Value) -> String {
    io::to_pretty(v)
}

fn header(rs: &RootSystem, label: &str) -> Vec<String> {
    std::iter::once(label.to_string()).chain(rs.roots().iter().map(|r| r.to_string())).collect()
}

fn value_row<T: ToString>(label: &str, vals: impl IntoIterator<Item = T>) -> Vec<String> {
    std::iter::once(label.to_string()).chain(vals.into_iter().map(|v| v.to_string())).collect()
}

fn q_row<'a>(label: &str, vals: impl IntoIterator<Item = &'a Q>) -> Vec<String> {
    value_row(label, vals.into_iter().map(fmt_q))
}

fn point_text(p: &ApartmentPoint) -> String {
    let c: Vec<String> = p.coords.iter().map(fmt_q).collect();
    format!("({})", c.join(","))
}

fn fibre_output(f: &FibreRootDatum, format: Format) -> String {
    match format {
        Format::Json => pretty(&io::fibre_to_json(f)),
        Format::Table if f.is_empty() => "(empty)".to_string(),
        Format::Table => f.to_string(),
    }
}

fn matrix_output(m: &TruncatedLaurentMatrix, format: Format) -> String {
    match format {
        Format::Json => pretty(&io::matrix_to_json(m)),
        Format::Table => m.to_string(),
    }
}

fn concave_table(rs: &RootSystem, rows: &[(&str, &ConcaveMap)]) -> String {
    let mut t = vec![header(rs, "r")];
    for (label, f) in rows {
        t.push(q_row(label, &f.values));
    }
    render_table(&t)
}

fn execute(cmd: &Command, format: Format) -> Result<String> {
    match cmd {
        Command::Roots(ty) => {
            let rs = system(ty)?;
            Ok(match format {
                Format::Json => pretty(&json!({
                    "type": rs.dynkin().to_string(),
                    "roots": rs.roots().iter().map(io::root_json).collect::<Vec<_>>(),
                    "highest": io::root_json(rs.highest()),
                })),
                Format::Table => {
                    let mut t = vec![value_row("index", ["root", "height"])];
                    for (i, r) in rs.roots().iter().enumerate() {
                        t.push(vec![i.to_string(), r.to_string(), r.height().to_string()]);
                    }
                    render_table(&t)
                }
            })
        }
        Command::Constants(ty) => {
            let rs = system(ty)?;
            let g = rs.group_constants();
            Ok(match format {
                Format::Json => pretty(&json!({
                    "type": rs.dynkin().to_string(),
                    "coxeter": g.coxeter,
                    "mixed_char_bound": g.mixed_char_bound,
                    "bound_is_strict": g.bound_is_strict,
                    "min_faithful_dim": g.min_faithful_dim,
                })),
                Format::Table => {
                    let rel = if g.bound_is_strict { ">" } else { ">=" };
                    render_table(&[
                        vec!["coxeter".into(), g.coxeter.to_string()],
                        vec!["residue characteristic".into(), format!("p {rel} {}", g.mixed_char_bound)],
                        vec!["min faithful dim".into(), g.min_faithful_dim.to_string()],
                    ])
                }
            })
        }
        Command::Mvals { ty, theta } => {
            let rs = system(ty)?;
            let points = theta.iter().map(|t| point_arg(&rs, t)).collect::<Result<Vec<_>>>()?;
            let maps = points.iter().map(|p| rs.from_point(p)).collect::<Result<Vec<_>>>()?;
            let fs = ConcaveTuple::new(maps.clone())?;
            let sum = fs.combine(&(0..maps.len()).collect::<Vec<_>>())?;
            let pairings: Vec<Vec<Q>> = points
                .iter()
                .map(|p| rs.roots().iter().map(|r| rs.pairing(r, p)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            Ok(match format {
                Format::Json => {
                    let mut v = io::concave_to_json(&rs, &sum);
                    let pts: Vec<Value> = points
                        .iter()
                        .zip(&pairings)
                        .map(|(p, vals)| {
                            let obj: Map<String, Value> = rs
                                .roots()
                                .iter()
                                .zip(vals)
                                .map(|(r, x)| (r.to_string(), Value::String(fmt_q(x))))
                                .collect();
                            json!({"theta": io::point_to_json(p), "pairings": obj})
                        })
                        .collect();
                    v["points"] = Value::Array(pts);
                    pretty(&v)
                }
                Format::Table => {
                    let mut t = vec![header(&rs, "r")];
                    let many = points.len() > 1;
                    for (k, (vals, f)) in pairings.iter().zip(&maps).enumerate() {
                        let suffix = if many { format!("{}", k + 1) } else { String::new() };
                        t.push(q_row(&format!("r(θ{suffix})"), vals));
                        t.push(q_row(&format!("m(θ{suffix})"), &f.values));
                    }
                    if many {
                        t.push(q_row("sum", &sum.values));
                    }
                    render_table(&t)
                }
            })
        }
        Command::Msets { ty, omega } => {
            let rs = system(ty)?;
            let omega = set_arg(&rs, omega)?;
            let f = rs.from_set(&omega)?;
            Ok(match format {
                Format::Json => {
                    let mut v = io::concave_to_json(&rs, &f);
                    v["omega"] = io::set_to_json(&omega);
                    pretty(&v)
                }
                Format::Table => concave_table(&rs, &[("m(Ω)", &f)]),
            })
        }
        Command::Vertices(ty) => {
            let rs = system(ty)?;
            let mut rows = Vec::new();
            for node in 0..=rs.rank() {
                let d = if node == 0 { 1 } else { rs.d_alpha(node)? };
                rows.push((node, rs.alcove_vertex(node)?, d));
            }
            Ok(match format {
                Format::Json => pretty(&Value::Array(
                    rows.iter().map(|(n, p, d)| json!({"node": n, "theta": io::point_to_json(p), "d": d})).collect(),
                )),
                Format::Table => {
                    let mut t = vec![value_row("node", ["theta", "d"])];
                    for (n, p, d) in &rows {
                        t.push(vec![n.to_string(), point_text(p), d.to_string()]);
                    }
                    render_table(&t)
                }
            })
        }
        Command::Barycenter { ty, nodes } => {
            let rs = system(ty)?;
            let p = rs.barycenter(nodes)?;
            Ok(point_output(&p, format))
        }
        Command::Reduce { ty, theta } => {
            let rs = system(ty)?;
            let p = rs.alcove_reduce(&point_arg(&rs, theta)?)?;
            Ok(point_output(&p, format))
        }
        Command::ConcaveCheck { ty, concave } => {
            let rs = system(ty)?;
            let v = rs.is_concave(&concave_arg(&rs, concave)?)?;
            Ok(match format {
                Format::Json => pretty(&json!({
                    "concave": v.is_none(),
                    "violation": v.as_ref().map(|x| x.to_string()),
                })),
                Format::Table => match v {
                    None => "concave".to_string(),
                    Some(x) => format!("not concave: {x}"),
                },
            })
        }
        Command::Classify { ty, concave } => {
            let rs = system(ty)?;
            let w = rs.classify(&concave_arg(&rs, concave)?)?;
            Ok(match format {
                Format::Json => pretty(&io::witness_to_json(&w)),
                Format::Table => w.to_string(),
            })
        }
        Command::Fprime { ty, concave } => {
            let rs = system(ty)?;
            let f = concave_arg(&rs, concave)?;
            let g = rs.regularize(&f)?;
            Ok(match format {
                Format::Json => pretty(&io::concave_to_json(&rs, &g)),
                Format::Table => concave_table(&rs, &[("f", &f), ("f′", &g)]),
            })
        }
        Command::Moyprasad { ty, theta, depth } => {
            let rs = system(ty)?;
            let d = rs.moy_prasad(&point_arg(&rs, theta)?, &parse_q(depth)?)?;
            Ok(match format {
                Format::Json => pretty(&io::moy_prasad_to_json(&rs, &d)),
                Format::Table => {
                    let mut t = render_table(&[header(&rs, "r"), value_row("level", &d.root_values)]);
                    writeln!(t, "torus level {}", d.torus_level).unwrap();
                    t
                }
            })
        }
        Command::Pattern { ty, tuple, theta, depth } => {
            let rs = system(ty)?;
            let pat = match (tuple, theta, depth) {
                (Some(t), _, _) => ValuationPattern::from_tuple(&rs, &tuple_arg(&rs, t)?)?,
                (None, Some(th), Some(d)) => {
                    let datum = rs.moy_prasad(&point_arg(&rs, th)?, &parse_q(d)?)?;
                    ValuationPattern::from_moy_prasad(&rs, &datum)?
                }
                _ => return Err(Error::Parse("pattern needs --tuple or --theta with --depth".into())),
            };
            Ok(match format {
                Format::Json => pretty(&io::pattern_to_json(&pat)),
                Format::Table => {
                    let mut t = pat.to_string();
                    if pat.diag_unit_level > 0 {
                        writeln!(t, "diagonal ≡ 1 mod degree {}", pat.diag_unit_level).unwrap();
                    }
                    t
                }
            })
        }
        Command::Member { matrix, pattern } => {
            let m = matrix_arg(matrix)?;
            let pat = io::pattern_from_json(&json_arg(pattern)?)?;
            let ok = m.is_member(&pat)?;
            Ok(match format {
                Format::Json => pretty(&json!({"member": ok})),
                Format::Table => ok.to_string(),
            })
        }
        Command::Multiply { left, right } => {
            let p = matrix_arg(left)?.multiply(&matrix_arg(right)?)?;
            Ok(matrix_output(&p, format))
        }
        Command::Sample { pattern, seed, cap, pole_cap, generators, coeff_range, max_terms } => {
            let pat = io::pattern_from_json(&json_arg(pattern)?)?;
            let params = SampleParams {
                cap: *cap,
                pole_cap: *pole_cap,
                generators: *generators,
                coeff_range: *coeff_range,
                max_terms: *max_terms,
            };
            let m: TruncatedLaurentMatrix = sample_member(&pat, *seed, &params)?;
            Ok(matrix_output(&m, format))
        }
        Command::Diag { matrix } => Ok(matrix_output(&matrix_arg(matrix)?.specialize_diag()?, format)),
        Command::Embed { matrix, n } => Ok(matrix_output(&matrix_arg(matrix)?.embed_uniformizer(*n)?, format)),
        Command::Fibre { ty, concave } => {
            let rs = system(ty)?;
            Ok(fibre_output(&rs.fibre_roots(&concave_arg(&rs, concave)?)?, format))
        }
        Command::Phitheta { ty, theta } => {
            let rs = system(ty)?;
            Ok(fibre_output(&rs.phi_theta(&point_arg(&rs, theta)?)?, format))
        }
        Command::Facet { ty, scaling, nodes } => {
            let rs = system(ty)?;
            let scaling: FacetScaling = scaling.parse()?;
            Ok(fibre_output(&rs.facet_fibre(scaling, nodes)?, format))
        }
        Command::Subdiag { ty, tuple, subset } => {
            let rs = system(ty)?;
            Ok(fibre_output(&rs.subdiagonal_fibre(&tuple_arg(&rs, tuple)?, subset)?, format))
        }
        Command::Mckay { ty, d, tau } => {
            let rs = system(ty)?;
            let data = rs.mckay_ad(*d, tau)?;
            Ok(match format {
                Format::Json => pretty(&io::mckay_to_json(&rs, &data)),
                Format::Table => {
                    let list = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    let mut t = vec![value_row("s", ["tau_s", "theta", "fibre"])];
                    for c in &data.components {
                        t.push(vec![c.s.to_string(), list(&c.tau_s), point_text(&c.theta), String::new()]);
                    }
                    for (k, fib) in data.node_fibres.iter().enumerate() {
                        let shown = if fib.is_empty() { "(empty)".to_string() } else { fib.to_string() };
                        t.push(vec![format!("{}|{}", k + 1, k + 2), String::new(), String::new(), shown]);
                    }
                    let mut out = render_table(&t);
                    writeln!(out, "end types {} and {}", list(&data.end_types.0), list(&data.end_types.1)).unwrap();
                    out
                }
            })
        }
    }
}

fn point_output(p: &ApartmentPoint, format: Format) -> String {
    match format {
        Format::Json => pretty(&io::point_to_json(p)),
        Format::Table => point_text(p),
    }
}
