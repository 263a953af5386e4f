//! `ultranest`: nearest ultrametrics, tropical vertices and tree topologies
//! from the command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use ultranest::bergman::{check_in_fan, topology};
use ultranest::io::{parse_csv, parse_edge_list, parse_phylip, write_csv, write_edge_list};
use ultranest::nearest::{max_closest, solve, vector_json};
use ultranest::phylo::{complete_partial, to_newick, ultrametric_to_tree, upgma, NewickOptions, RootedTree};
use ultranest::rational::display;
use ultranest::{DissimilarityMap, Error, GraphicMatroid, Matroid, Parallelism, Result, SolveOptions, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// l-infinity distance and the maximal closest point.
    Nearest,
    /// Layers, generating set, tropical vertices and topology census.
    Vertices,
    /// Topologies of the tropical vertices as canonical nested sets.
    Topologies,
    /// Extend an ultrametric on a graph to all pairs of vertices.
    Complete,
    /// UPGMA tree of a dissimilarity matrix.
    Upgma,
    /// Test whether the input is already an (M-)ultrametric.
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Csv,
    Phylip,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
    Newick,
}

#[derive(Debug, Parser)]
#[command(name = "ultranest", version, about)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Dissimilarity matrix (csv, phylip) or weighted edge list.
    #[arg(short, long)]
    input: PathBuf,

    /// Input format; inferred from the file extension when omitted.
    #[arg(short, long, value_enum)]
    format: Option<InputFormat>,

    #[arg(short, long, value_enum, default_value = "text")]
    output: OutputFormat,

    /// Worker threads for layer expansion (1 runs sequentially).
    #[arg(long)]
    threads: Option<usize>,

    #[arg(long, default_value_t = SolveOptions::default().max_layer_width)]
    max_layer_width: usize,

    #[arg(long, default_value_t = SolveOptions::default().max_subsets)]
    max_subsets: u64,

    /// Print numbers rounded to this many decimals instead of exact fractions.
    #[arg(long)]
    decimal: Option<usize>,
}

/// A weight vector on a graph, with the full matrix when the input was one.
struct Instance {
    graph: GraphicMatroid,
    weights: WeightVector,
    matrix: Option<DissimilarityMap>,
}

fn infer_format(cli: &Cli) -> Result<InputFormat> {
    if let Some(f) = cli.format {
        return Ok(f);
    }
    let ext = cli.input.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    match ext.as_str() {
        "csv" => Ok(InputFormat::Csv),
        "phy" | "phylip" | "dist" => Ok(InputFormat::Phylip),
        "edgelist" | "edges" | "tsv" => Ok(InputFormat::Edgelist),
        _ => Err(Error::Input(format!("cannot infer the format of {}; pass --format", cli.input.display()))),
    }
}

fn load(cli: &Cli) -> Result<Instance> {
    let text = std::fs::read_to_string(&cli.input)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", cli.input.display())))?;
    let matrix = match infer_format(cli)? {
        InputFormat::Csv => parse_csv(&text)?,
        InputFormat::Phylip => parse_phylip(&text)?,
        InputFormat::Edgelist => {
            let p = parse_edge_list(&text)?;
            return Ok(Instance { graph: p.graph, weights: p.weights, matrix: None });
        }
    };
    Ok(Instance { graph: matrix.graph(), weights: matrix.to_pairs(), matrix: Some(matrix) })
}

fn options(cli: &Cli) -> SolveOptions {
    let parallelism = match cli.threads {
        None => Parallelism::Parallel,
        Some(0 | 1) => Parallelism::Sequential,
        Some(k) => Parallelism::Threads(k),
    };
    SolveOptions { parallelism, max_layer_width: cli.max_layer_width, max_subsets: cli.max_subsets }
}

struct Printer<'a> {
    inst: &'a Instance,
    decimal: Option<usize>,
}

impl Printer<'_> {
    fn num(&self, r: &ultranest::Rational) -> String {
        display(r, self.decimal)
    }

    fn row(&self, w: &WeightVector) -> String {
        w.iter().map(|r| self.num(r)).collect::<Vec<_>>().join("\t")
    }

    fn header(&self) -> String {
        self.inst.graph.ground().labels().join("\t")
    }

    /// A weight vector as a matrix when the input was one, else as an edge list.
    fn table(&self, w: &WeightVector) -> Result<String> {
        match &self.inst.matrix {
            Some(m) => Ok(write_csv(&DissimilarityMap::from_pairs(m.taxa().to_vec(), w)?, self.decimal)),
            None => Ok(write_edge_list(&self.inst.graph, w, self.decimal)),
        }
    }

    fn tree(&self, w: &WeightVector) -> Result<RootedTree> {
        let taxa = self
            .inst
            .matrix
            .as_ref()
            .map(|m| m.taxa().to_vec())
            .ok_or_else(|| Error::Input("newick output needs a dissimilarity matrix, not an edge list".into()))?;
        ultrametric_to_tree(&DissimilarityMap::from_pairs(taxa, w)?)
    }

    fn newick(&self, tree: &RootedTree) -> String {
        if tree.has_negative_branches() {
            eprintln!("warning: tree has negative branch lengths");
        }
        let opts = NewickOptions {
            max_digits: self.decimal.unwrap_or(NewickOptions::default().max_digits),
            ..NewickOptions::default()
        };
        to_newick(tree, &opts)
    }
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String> {
    let inst = load(cli)?;
    let p = Printer { inst: &inst, decimal: cli.decimal };
    let ground = inst.graph.ground();
    let mut out = String::new();
    match cli.command {
        Command::Nearest => {
            let (d, xm) = max_closest(&inst.graph, &inst.weights)?;
            match cli.output {
                OutputFormat::Json => {
                    out = json_out(json!({
                        "elements": ground.labels(),
                        "distance": p.num(&d),
                        "max_closest": vector_json(&xm, cli.decimal),
                    }))
                }
                OutputFormat::Text => {
                    let _ = writeln!(out, "distance: {}", p.num(&d));
                    out.push_str(&p.table(&xm)?);
                }
                OutputFormat::Newick => out = p.newick(&p.tree(&xm)?) + "\n",
            }
        }
        Command::Vertices | Command::Topologies => {
            let sol = solve(&inst.graph, &inst.weights, &options(cli))?;
            match (cli.command, cli.output) {
                (_, OutputFormat::Json) => {
                    let mut v = sol.to_json(ground, cli.decimal);
                    if cli.command == Command::Topologies {
                        let keep = ["elements", "topologies", "census", "maximal_topologies", "unique_topology"];
                        v.as_object_mut().expect("object").retain(|k, _| keep.contains(&k.as_str()));
                    }
                    out = json_out(v);
                }
                (_, OutputFormat::Newick) => {
                    let mut seen = Vec::new();
                    for v in &sol.vertices {
                        let tree = p.tree(v)?;
                        let mut shape = tree.clusters();
                        shape.sort();
                        if cli.command == Command::Topologies && seen.contains(&shape) {
                            continue;
                        }
                        seen.push(shape);
                        let _ = writeln!(out, "{}", p.newick(&tree));
                    }
                }
                (Command::Vertices, OutputFormat::Text) => {
                    let _ = writeln!(out, "distance: {}", p.num(&sol.distance));
                    let _ = writeln!(out, "elements:\t{}", p.header());
                    let _ = writeln!(out, "max_closest:\t{}", p.row(&sol.max_closest));
                    for (i, layer) in sol.layers.iter().enumerate() {
                        let _ = writeln!(out, "layer {i} ({}):", layer.len());
                        for w in layer {
                            let _ = writeln!(out, "\t{}", p.row(w));
                        }
                    }
                    let _ = writeln!(out, "generating set ({}):", sol.filtered.len());
                    for w in &sol.filtered {
                        let _ = writeln!(out, "\t{}", p.row(w));
                    }
                    let _ = writeln!(out, "vertices ({}):", sol.vertices.len());
                    for w in &sol.vertices {
                        let _ = writeln!(out, "\t{}", p.row(w));
                    }
                    write_census(&mut out, &sol, ground);
                }
                (_, OutputFormat::Text) => {
                    let _ = writeln!(out, "vertex topologies ({}):", sol.vertex_topologies.len());
                    for t in &sol.vertex_topologies {
                        let _ = writeln!(out, "\t{}", t.describe(ground));
                    }
                    write_census(&mut out, &sol, ground);
                }
            }
        }
        Command::Complete => {
            if inst.matrix.is_some() {
                return Err(Error::Input("complete needs an edge-list input".into()));
            }
            let partial = ultranest::phylo::PartialDissimilarity::new(inst.graph.clone(), inst.weights.clone())?;
            let full = complete_partial(&partial)?;
            out = match cli.output {
                OutputFormat::Json => json_out(json!({
                    "taxa": full.taxa(),
                    "matrix": full.rows().iter().map(|r| r.iter().map(|x| p.num(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })),
                OutputFormat::Text => write_csv(&full, cli.decimal),
                OutputFormat::Newick => p.newick(&ultrametric_to_tree(&full)?) + "\n",
            };
        }
        Command::Upgma => {
            let delta = inst
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Input("upgma needs a dissimilarity matrix, not an edge list".into()))?;
            let tree = upgma(delta)?;
            let heights: Vec<String> = tree.internal_heights().iter().map(|h| p.num(h)).collect();
            out = match cli.output {
                OutputFormat::Json => json_out(json!({ "heights": heights, "newick": p.newick(&tree) })),
                OutputFormat::Text => format!("heights: {}\n{}\n", heights.join(" "), p.newick(&tree)),
                OutputFormat::Newick => p.newick(&tree) + "\n",
            };
        }
        Command::Check => {
            check_in_fan(&inst.graph, &inst.weights)?;
            let t = topology(&inst.graph, &inst.weights)?;
            out = match cli.output {
                OutputFormat::Json => {
                    json_out(json!({ "ultrametric": true, "topology": t.to_json(ground, cli.decimal) }))
                }
                OutputFormat::Text => format!("ultrametric: yes\ntopology: {}\n", t.describe(ground)),
                OutputFormat::Newick => p.newick(&p.tree(&inst.weights)?) + "\n",
            };
        }
    }
    Ok(out)
}

fn write_census(out: &mut String, sol: &ultranest::NearestSolution, ground: &ultranest::GroundSet) {
    let _ = writeln!(out, "topology census ({}):", sol.topology_census.len());
    for (flats, count) in &sol.topology_census {
        let names: Vec<String> = flats.iter().map(|f| ground.format(f)).collect();
        let _ = writeln!(out, "\t{count}\t{}", names.join(" "));
    }
    let _ = writeln!(out, "maximal topologies: {}", sol.maximal_topologies.len());
    let _ = writeln!(out, "unique topology: {}", sol.unique_topology);
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Parse { .. } => 2,
        Error::Resource { .. } => 3,
        Error::NotInFan { .. } | Error::Precondition(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
