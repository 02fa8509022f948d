//! Command-line surface for the magic labelling toolkit.
//!
//! Exit codes: 0 success, 1 verification failure (report printed), 2
//! usage or input error. Progress notes go to standard error; the data a
//! command produces goes to standard output (or `--output`), byte-identical
//! across runs and thread counts.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use magilab::cone;
use magilab::enumerate;
use magilab::graph::{catalog_graph, Graph, Labelling, CATALOG_NAMES};
use magilab::monoid::{self, Decomposition};
use magilab::omega;
use magilab::series;
use magilab::symmetry::{self, PermGroup};

#[derive(Parser)]
#[command(name = "magilab", version, about = "Exact enumeration and decomposition of magic graph labellings")]
struct Cli {
    /// Output format for data-producing commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Worker threads; defaults to MAGILAB_THREADS or all cores.
    #[arg(long, global = true, env = "MAGILAB_THREADS")]
    threads: Option<usize>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List or show the built-in graphs.
    Graphs {
        #[command(subcommand)]
        action: GraphsAction,
    },
    /// Count magic labellings of one sum (or all sums up to it).
    Count {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        sum: u64,
        /// Count only labellings with pairwise-distinct labels.
        #[arg(long)]
        distinct: bool,
        /// Report every sum 0..=SUM instead of a single count.
        #[arg(long)]
        upto: bool,
    },
    /// List magic labellings of one sum in lexicographic order.
    Enumerate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        sum: u64,
        #[arg(long)]
        distinct: bool,
    },
    /// Counting series h(0..=S), or the full multivariate truncation.
    Series {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        max_sum: u64,
        /// Dump one term per labelling instead of counts per sum.
        #[arg(long)]
        multivariate: bool,
    },
    /// Extreme rays of the magic cone, primitive and sorted.
    Rays {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Reconstruct a generating-function numerator over a denominator
    /// ansatz like `1^3,2^1` (meaning (1-y)^3 (1-y^2)).
    Gf {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        max_sum: u64,
        #[arg(long)]
        denominator: String,
    },
    /// Fit h(s) = P(s) + (-1)^s Q(s) to the counting series.
    Fit {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        max_sum: u64,
        #[arg(long)]
        deg_p: usize,
        #[arg(long)]
        deg_q: Option<usize>,
    },
    /// Verify a shifted-free-monoid decomposition exhaustively.
    VerifyDecomp {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, conflicts_with = "file")]
        builtin: bool,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        max_sum: u64,
    },
    /// Represent a labelling in the graph's builtin decomposition.
    Represent {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated labels, e.g. 1,0,0,1,0,0,0,1,1,1,1,0
        #[arg(long)]
        labelling: String,
    },
    /// Permutations with nonempty strictly-ordered labelling cone.
    Orders {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Orbits of the distinct labellings of one sum under a symmetry group.
    Orbits {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        sum: u64,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Check the crude-form Omega pipeline against enumeration.
    OmegaCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        max_sum: u64,
    },
}

#[derive(Subcommand)]
enum GraphsAction {
    List,
    Show { name: String },
}

#[derive(Args)]
struct GraphArg {
    /// Catalog name (G1..G5b) or path to a graph JSON file.
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupArg {
    /// The dihedral group of the G4 hexagon drawing.
    #[arg(long)]
    d6: bool,
    /// The full automorphism group of the graph.
    #[arg(long)]
    full: bool,
    /// A group file: JSON list of 1-indexed edge permutations.
    #[arg(long)]
    group: Option<PathBuf>,
}

impl GraphArg {
    fn resolve(&self) -> magilab::Result<Graph> {
        if let Some(name) =
            CATALOG_NAMES.iter().find(|n| n.eq_ignore_ascii_case(&self.graph))
        {
            return catalog_graph(name);
        }
        let path = PathBuf::from(&self.graph);
        if path.exists() {
            return Graph::from_json_file(path);
        }
        Err(magilab::Error::UnknownGraph(self.graph.clone()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let output = cli.output.clone();
    match run(cli) {
        Ok(Outcome { text, verification_failed }) => {
            if let Err(e) = write_output(&output, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if verification_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    text: String,
    verification_failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verification_failed: false }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
        }
    }
}

fn json_top(fields: Vec<(&str, serde_json::Value)>) -> String {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), serde_json::json!(1));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("json");
    text.push('\n');
    text
}

/// Exact integers in JSON output, however large.
fn big_json(value: &BigInt) -> serde_json::Value {
    serde_json::Number::from_string_unchecked(value.to_string()).into()
}

fn labelling_json(lab: &Labelling) -> serde_json::Value {
    serde_json::json!(lab.values())
}

fn run(cli: Cli) -> magilab::Result<Outcome> {
    match cli.command {
        Command::Graphs { action } => graphs_cmd(action, cli.format),
        Command::Count { graph, sum, distinct, upto } => {
            let g = graph.resolve()?;
            count_cmd(&g, sum, distinct, upto, cli.format)
        }
        Command::Enumerate { graph, sum, distinct } => {
            let g = graph.resolve()?;
            let labs = if distinct {
                enumerate::enumerate_distinct(&g, sum)
            } else {
                enumerate::enumerate_magic(&g, sum)
            };
            Ok(Outcome::ok(match cli.format {
                Format::Tsv => labs.iter().map(|l| format!("{l}\n")).collect(),
                Format::Json => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    ("sum", serde_json::json!(sum)),
                    ("distinct", serde_json::json!(distinct)),
                    (
                        "labellings",
                        serde_json::Value::Array(labs.iter().map(labelling_json).collect()),
                    ),
                ]),
            }))
        }
        Command::Series { graph, max_sum, multivariate } => {
            let g = graph.resolve()?;
            series_cmd(&g, max_sum, multivariate, cli.format)
        }
        Command::Rays { graph } => {
            let g = graph.resolve()?;
            let rays = cone::extreme_rays(&g);
            Ok(Outcome::ok(match cli.format {
                Format::Tsv => rays
                    .iter()
                    .map(|r| {
                        let parts: Vec<String> = r.direction.iter().map(u64::to_string).collect();
                        format!("{}\n", parts.join(" "))
                    })
                    .collect(),
                Format::Json => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    (
                        "rays",
                        serde_json::json!(rays.iter().map(|r| r.direction.clone()).collect::<Vec<_>>()),
                    ),
                ]),
            }))
        }
        Command::Gf { graph, max_sum, denominator } => {
            let g = graph.resolve()?;
            let factors = parse_denominator(&denominator)?;
            let counts = enumerate::count_series(&g, max_sum);
            let coeffs: Vec<BigInt> = counts.values.iter().map(|v| BigInt::from(v.clone())).collect();
            let numerator = series::reconstruct_numerator(&coeffs, &factors)?;
            // the GF dump is a JSON format regardless of --format
            Ok(Outcome::ok(json_top(vec![
                ("graph", serde_json::json!(g.name())),
                (
                    "numerator",
                    serde_json::Value::Array(numerator.coeffs().iter().map(big_json).collect()),
                ),
                ("factors", serde_json::json!(factors)),
            ])))
        }
        Command::Fit { graph, max_sum, deg_p, deg_q } => {
            let g = graph.resolve()?;
            let counts = enumerate::count_series(&g, max_sum);
            let values: Vec<BigInt> = counts.values.iter().map(|v| BigInt::from(v.clone())).collect();
            let qp = series::fit_stanley(&values, deg_p, deg_q)?;
            let rat_str = |r: &num_rational::BigRational| r.to_string();
            Ok(Outcome::ok(match cli.format {
                Format::Tsv => {
                    let p: Vec<String> = qp.p.iter().map(rat_str).collect();
                    let q: Vec<String> = qp.q.iter().map(rat_str).collect();
                    format!("P\t{}\nQ\t{}\n", p.join(" "), q.join(" "))
                }
                Format::Json => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    ("p", serde_json::json!(qp.p.iter().map(rat_str).collect::<Vec<_>>())),
                    ("q", serde_json::json!(qp.q.iter().map(rat_str).collect::<Vec<_>>())),
                ]),
            }))
        }
        Command::VerifyDecomp { graph, builtin, file, max_sum } => {
            let g = graph.resolve()?;
            let decomp = match (builtin, file) {
                (true, None) => monoid::builtin_decomposition(g.name())?,
                (false, Some(path)) => Decomposition::from_json_file(path)?,
                _ => {
                    return Err(magilab::Error::InvalidGraph(
                        "pass exactly one of --builtin or --file".into(),
                    ))
                }
            };
            eprintln!("verifying {} pieces up to sum {max_sum}", decomp.pieces().len());
            let report = monoid::verify_decomposition(&g, &decomp, max_sum);
            Ok(Outcome { text: format!("{report}\n"), verification_failed: !report.ok() })
        }
        Command::Represent { graph, labelling } => {
            let g = graph.resolve()?;
            represent_cmd(&g, &labelling, cli.format)
        }
        Command::Orders { graph, count_only } => {
            let g = graph.resolve()?;
            let orders = cone::feasible_orders(&g);
            Ok(Outcome::ok(match (count_only, cli.format) {
                (true, Format::Tsv) => format!("{}\n", orders.len()),
                (true, Format::Json) => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    ("count", serde_json::json!(orders.len())),
                ]),
                (false, Format::Tsv) => orders
                    .iter()
                    .map(|pi| {
                        let parts: Vec<String> = pi.iter().map(usize::to_string).collect();
                        format!("{}\n", parts.join(" "))
                    })
                    .collect(),
                (false, Format::Json) => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    ("count", serde_json::json!(orders.len())),
                    ("orders", serde_json::json!(orders)),
                ]),
            }))
        }
        Command::Orbits { graph, sum, group } => {
            let g = graph.resolve()?;
            let grp = resolve_group(&g, &group)?;
            let labellings = enumerate::enumerate_distinct(&g, sum);
            let orbits = symmetry::orbit_count(&labellings, &grp);
            Ok(Outcome::ok(match cli.format {
                Format::Tsv => {
                    let mut text = format!("orbits\t{}\n", orbits.count());
                    for (rep, size) in orbits.representatives.iter().zip(&orbits.sizes) {
                        text.push_str(&format!("{sum}\t{rep}\t{size}\n"));
                    }
                    text
                }
                Format::Json => json_top(vec![
                    ("graph", serde_json::json!(g.name())),
                    ("sum", serde_json::json!(sum)),
                    ("orbits", serde_json::json!(orbits.count())),
                    (
                        "representatives",
                        serde_json::Value::Array(
                            orbits
                                .representatives
                                .iter()
                                .zip(&orbits.sizes)
                                .map(|(rep, size)| {
                                    serde_json::json!({"alpha": rep.values(), "size": size})
                                })
                                .collect(),
                        ),
                    ),
                ]),
            }))
        }
        Command::OmegaCheck { graph, max_sum } => {
            let g = graph.resolve()?;
            let cf = omega::crude_form(&g);
            eprintln!("crude form: {cf}");
            let expanded = omega::expand_bounded(&cf, max_sum as u32)?;
            let via_omega = omega::omega_eq(&expanded);
            let via_enum = enumerate::multivariate_truncation(&g, max_sum);
            let cmp = series::series_equal(&via_omega, &via_enum)?;
            if cmp.equal {
                Ok(Outcome::ok(format!(
                    "omega-check {}: OK ({} terms up to sum {max_sum})\n",
                    g.name(),
                    via_enum.num_terms()
                )))
            } else {
                let mut text = format!("omega-check {}: MISMATCH\n", g.name());
                for diff in &cmp.diffs {
                    text.push_str(&format!(
                        "  s={} alpha={:?}: omega {} vs enumeration {}\n",
                        diff.key.s, diff.key.alpha, diff.left, diff.right
                    ));
                }
                Ok(Outcome { text, verification_failed: true })
            }
        }
    }
}

fn graphs_cmd(action: GraphsAction, format: Format) -> magilab::Result<Outcome> {
    match action {
        GraphsAction::List => Ok(Outcome::ok(match format {
            Format::Tsv => CATALOG_NAMES.map(|n| format!("{n}\n")).concat(),
            Format::Json => json_top(vec![("graphs", serde_json::json!(CATALOG_NAMES))]),
        })),
        GraphsAction::Show { name } => {
            let resolved = CATALOG_NAMES
                .iter()
                .find(|n| n.eq_ignore_ascii_case(&name))
                .copied()
                .unwrap_or(name.as_str());
            let g = catalog_graph(resolved)?;
            Ok(Outcome::ok(format!("{}\n", g.to_json())))
        }
    }
}

fn count_cmd(g: &Graph, sum: u64, distinct: bool, upto: bool, format: Format) -> magilab::Result<Outcome> {
    let counts: Vec<num_bigint::BigUint> = if upto {
        if distinct {
            enumerate::count_distinct_series(g, sum).values
        } else {
            enumerate::count_series(g, sum).values
        }
    } else if distinct {
        vec![enumerate::count_distinct(g, sum)]
    } else {
        vec![enumerate::count_magic(g, sum)]
    };
    Ok(Outcome::ok(match format {
        Format::Tsv => {
            if upto {
                counts.iter().enumerate().map(|(s, c)| format!("{s}\t{c}\n")).collect()
            } else {
                format!("{}\n", counts[0])
            }
        }
        Format::Json => json_top(vec![
            ("graph", serde_json::json!(g.name())),
            ("sum", serde_json::json!(sum)),
            ("distinct", serde_json::json!(distinct)),
            ("upto", serde_json::json!(upto)),
            (
                "counts",
                serde_json::Value::Array(
                    counts.iter().map(|c| big_json(&BigInt::from(c.clone()))).collect(),
                ),
            ),
        ]),
    }))
}

fn series_cmd(g: &Graph, max_sum: u64, multivariate: bool, format: Format) -> magilab::Result<Outcome> {
    if multivariate {
        let series = enumerate::multivariate_truncation(g, max_sum);
        return Ok(Outcome::ok(match format {
            Format::Tsv => series.to_tsv(),
            Format::Json => json_top(vec![
                ("graph", serde_json::json!(g.name())),
                ("max_sum", serde_json::json!(max_sum)),
                (
                    "terms",
                    serde_json::Value::Array(
                        series
                            .iter()
                            .map(|(key, coeff)| {
                                serde_json::json!({
                                    "s": key.s,
                                    "alpha": key.alpha,
                                    "coeff": big_json(coeff),
                                })
                            })
                            .collect(),
                    ),
                ),
            ]),
        }));
    }
    count_cmd(g, max_sum, false, true, format)
}

fn represent_cmd(g: &Graph, labelling: &str, format: Format) -> magilab::Result<Outcome> {
    let values: Vec<u32> = labelling
        .split(',')
        .map(|part| part.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| magilab::Error::InvalidGraph(format!("bad labelling `{labelling}`")))?;
    let lab = Labelling(values);
    let decomp = monoid::builtin_decomposition(g.name())?;
    let (piece, l) = monoid::decomp_represent(g, &decomp, &lab)?;

    let mut extra_g3: Option<(String, String, Vec<String>)> = None;
    if g.name() == "G3" {
        let k = monoid::g3_coordinates_of(&lab)?;
        let class = monoid::g3_classify(&k)?;
        let (ty, _) = monoid::g3_transform(&k, class)?;
        let k_strs: Vec<String> = k.k.iter().map(|r| r.to_string()).collect();
        extra_g3 = Some((class.to_string(), ty.to_string(), k_strs));
    }

    Ok(Outcome::ok(match format {
        Format::Tsv => {
            let l_strs: Vec<String> = l.iter().map(u64::to_string).collect();
            let mut text = format!("piece\t{piece}\nl\t{}\n", l_strs.join(" "));
            if let Some((class, ty, k)) = extra_g3 {
                text.push_str(&format!("k\t{}\nclass\t{class}\ntype\t{ty}\n", k.join(" ")));
            }
            text
        }
        Format::Json => {
            let mut fields = vec![
                ("graph", serde_json::json!(g.name())),
                ("piece", serde_json::json!(piece)),
                ("l", serde_json::json!(l)),
            ];
            if let Some((class, ty, k)) = extra_g3 {
                fields.push(("k", serde_json::json!(k)));
                fields.push(("class", serde_json::json!(class)));
                fields.push(("type", serde_json::json!(ty)));
            }
            json_top(fields)
        }
    }))
}

fn resolve_group(g: &Graph, arg: &GroupArg) -> magilab::Result<PermGroup> {
    if arg.d6 {
        if g.name() != "G4" {
            return Err(magilab::Error::InvalidGroup("--d6 applies to the catalog graph G4".into()));
        }
        return Ok(symmetry::d6_group_g4());
    }
    if arg.full {
        return symmetry::automorphisms(g);
    }
    if let Some(path) = &arg.group {
        let group = PermGroup::from_json(&std::fs::read_to_string(path)?)?;
        let sizes: BTreeSet<usize> = group.elements().iter().map(|p| p.len()).collect();
        if sizes != BTreeSet::from([g.num_edges()]) {
            return Err(magilab::Error::InvalidGroup(format!(
                "group permutes {sizes:?} edges, graph has {}",
                g.num_edges()
            )));
        }
        return Ok(group);
    }
    unreachable!("clap enforces the group choice");
}

fn parse_denominator(text: &str) -> magilab::Result<Vec<(u32, u32)>> {
    let mut factors = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (d, m) = match part.split_once('^') {
            Some((d, m)) => (d.trim(), m.trim()),
            None => (part, "1"),
        };
        let d: u32 = d
            .parse()
            .map_err(|_| magilab::Error::InvalidGraph(format!("bad denominator factor `{part}`")))?;
        let m: u32 = m
            .parse()
            .map_err(|_| magilab::Error::InvalidGraph(format!("bad denominator factor `{part}`")))?;
        if d == 0 || m == 0 {
            return Err(magilab::Error::InvalidGraph(format!("bad denominator factor `{part}`")));
        }
        factors.push((d, m));
    }
    Ok(factors)
}
