//! Command-line surface. Every command renders into an [`Outcome`] so runs
//! can be hashed into a manifest and replayed byte for byte.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::arith;
use crate::designs::{self, DifferenceSet, TrivialKind};
use crate::error::{Error, Result};
use crate::graphs::{self, ColoredDigraph, DdgVerdict, DrgVerdict, DsrgVerdict};
use crate::identities::{check_group_ring_identities, check_structure_identities, TatraMatrices};
use crate::io::{self, GraphFormat, RunManifest};
use crate::iso::{self, ColoredStructure};
use crate::scheme::{verify_scheme, Scheme, SchemeVerdict};
use crate::search::{self, SearchMode};
use crate::sring::{fuse_scheme, GroupRingElt, SRing};
use crate::tatra::{Omega, ORDERING_CONVENTION};

pub const THREADS_ENV: &str = "SCHEME_FORGE_THREADS";

#[derive(Parser, Debug, Clone)]
#[command(
    name = "scheme-forge",
    version,
    about = "Tatra schemes, their DSRG/DDG fusions and exact certificates"
)]
pub struct Cli {
    /// Write a replay manifest for this run to the given path.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_manifest: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled property checks. Never affects constructions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// The Tatra scheme X0 and its fusions.
    Scheme {
        #[command(subcommand)]
        cmd: SchemeCmd,
    },
    /// Directed strongly regular graphs Gamma(i, g).
    Dsrg {
        #[command(subcommand)]
        cmd: DsrgCmd,
    },
    /// Divisible design graphs Delta(D).
    Ddg {
        #[command(subcommand)]
        cmd: DdgCmd,
    },
    /// Difference sets in Z_n.
    Ds {
        #[command(subcommand)]
        cmd: DsCmd,
    },
    /// Distance-regularity.
    Drg {
        #[command(subcommand)]
        cmd: DrgCmd,
    },
    /// Admissible (p, q) pairs.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Convert a graph file between formats.
    Export(ExportArgs),
    /// Re-run a manifest and compare output hashes.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TatraArgs {
    /// Field order, a prime power.
    #[arg(long)]
    pub q: u64,
    /// Index of K in the multiplicative group.
    #[arg(long)]
    pub n: u32,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SchemeCmd {
    Build {
        #[command(flatten)]
        tatra: TatraArgs,
        /// Write the color matrix as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[command(flatten)]
        tatra: TatraArgs,
        /// Random group-ring pairs for the linear identities.
        #[arg(long, default_value_t = 0)]
        group_ring_samples: usize,
    },
    Fuse {
        #[command(flatten)]
        tatra: TatraArgs,
        /// Cyclotomic S-ring from these multipliers.
        #[arg(long, value_delimiter = ',', conflicts_with = "ds")]
        multipliers: Vec<usize>,
        /// S-ring from a difference set.
        #[arg(long, value_delimiter = ',')]
        ds: Vec<u32>,
    },
    Aut {
        #[command(flatten)]
        tatra: TatraArgs,
        /// Also count the semilinear maps' images.
        #[arg(long)]
        predict: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Graph6,
    Digraph6,
    EdgeList,
    AdjacencyJson,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => GraphFormat::Graph6,
            FormatArg::Digraph6 => GraphFormat::Digraph6,
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::AdjacencyJson => GraphFormat::AdjacencyJson,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct GraphOut {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphIn {
    #[arg(long)]
    pub input: PathBuf,
    /// Detected from the content when omitted.
    #[arg(long, value_enum)]
    pub input_format: Option<FormatArg>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum DsrgCmd {
    Build {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        i: u8,
        #[arg(long, default_value_t = 0)]
        g: u32,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: GraphOut,
    },
    Verify {
        #[command(flatten)]
        input: GraphIn,
    },
    /// Compare Gamma(i1, g1) with Gamma(i2, g2).
    Iso {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        i1: u8,
        #[arg(long, default_value_t = 0)]
        g1: u32,
        #[arg(long, default_value_t = 2)]
        i2: u8,
        #[arg(long, default_value_t = 0)]
        g2: u32,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DsChoice {
    /// Explicit elements.
    #[arg(long, value_delimiter = ',', group = "dschoice")]
    pub ds: Vec<u32>,
    /// Quadratic residues mod n.
    #[arg(long, group = "dschoice")]
    pub paley: bool,
    /// Singer set from GF(r^d), given as r,d.
    #[arg(long, value_delimiter = ',', num_args = 2, group = "dschoice")]
    pub singer: Vec<u32>,
    /// Take the complement of the chosen set.
    #[arg(long)]
    pub complement: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum DdgCmd {
    Build {
        #[command(flatten)]
        tatra: TatraArgs,
        #[command(flatten)]
        choice: DsChoice,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: GraphOut,
    },
    Verify {
        #[command(flatten)]
        input: GraphIn,
        /// Classes are consecutive blocks of this size (when the file has no partition).
        #[arg(long)]
        class_size: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DsKind {
    Paley,
    Singer,
    Singleton,
    ComplementSingleton,
    Full,
}

#[derive(Subcommand, Debug, Clone)]
pub enum DsCmd {
    Make {
        #[arg(long, value_enum)]
        kind: DsKind,
        /// Prime for Paley, group order for the trivial kinds.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        complement: bool,
    },
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<u32>,
    },
    Equiv {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
    },
    List,
}

#[derive(Subcommand, Debug, Clone)]
pub enum DrgCmd {
    /// The graph (Omega, s_g), or a graph file with --input.
    Check {
        #[arg(long, requires = "n")]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        g: u32,
        #[arg(long, conflicts_with = "q")]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SearchCmd {
    Pairs {
        #[arg(long)]
        max_q: u64,
        /// Only prime q.
        #[arg(long)]
        prime_q: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        output: TableFormat,
        /// Print only the number of pairs.
        #[arg(long)]
        count: bool,
    },
    Bh {
        #[arg(long)]
        max_t: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: GraphIn,
    #[arg(long, value_enum)]
    pub to: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Rendered result of one command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub exit_code: i32,
    pub field_modulus: Option<String>,
}

impl Outcome {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn json(&mut self, v: &serde_json::Value) {
        self.line(serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn omega_for(t: &TatraArgs, out: &mut Outcome) -> Result<Omega> {
    let (r, d) =
        arith::prime_power(t.q).ok_or_else(|| Error::BadParameters(format!("q = {} is not a prime power", t.q)))?;
    let omega = Omega::build(r, d, t.n)?;
    out.field_modulus = Some(omega.field().modulus_string());
    Ok(omega)
}

fn read_graph(input: &GraphIn) -> Result<ColoredDigraph> {
    let text =
        std::fs::read_to_string(&input.input).map_err(|e| Error::Parse(format!("{}: {e}", input.input.display())))?;
    let format = input
        .input_format
        .map(GraphFormat::from)
        .unwrap_or_else(|| io::sniff_format(&text));
    io::import_graph(&text, format)
}

fn write_graph(g: &ColoredDigraph, out: &GraphOut, default: GraphFormat, o: &mut Outcome) -> Result<()> {
    let Some(path) = &out.out else {
        return Ok(());
    };
    let format = out.format.map(GraphFormat::from).unwrap_or(default);
    let mut text = io::export_graph(g, format)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    o.files.push((path.clone(), text.into_bytes()));
    Ok(())
}

fn tuple(v: &[u64]) -> String {
    format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut o = Outcome::default();
    match &cli.command {
        Command::Scheme { cmd } => scheme_cmd(cli, cmd, &mut o)?,
        Command::Dsrg { cmd } => dsrg_cmd(cli, cmd, &mut o)?,
        Command::Ddg { cmd } => ddg_cmd(cli, cmd, &mut o)?,
        Command::Ds { cmd } => ds_cmd(cli, cmd, &mut o)?,
        Command::Drg { cmd } => drg_cmd(cli, cmd, &mut o)?,
        Command::Search { cmd } => search_cmd(cmd, &mut o)?,
        Command::Export(args) => {
            let g = read_graph(&args.input)?;
            let mut text = io::export_graph(&g, args.to.into())?;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match &args.out {
                Some(p) => o.files.push((p.clone(), text.into_bytes())),
                None => o.stdout.push_str(&text),
            }
        }
        Command::Replay { manifest } => replay(manifest, &mut o)?,
    }
    Ok(o)
}

fn scheme_cmd(cli: &Cli, cmd: &SchemeCmd, o: &mut Outcome) -> Result<()> {
    match cmd {
        SchemeCmd::Build { tatra, out } => {
            let omega = omega_for(tatra, o)?;
            let x0 = Scheme::tatra(&omega);
            let summary = json!({
                "q": omega.q(), "n": omega.n(), "m": omega.m(),
                "points": x0.points(), "rank": x0.rank(),
                "modulus": omega.field().modulus_string(),
                "ordering_convention": ORDERING_CONVENTION,
            });
            if cli.json {
                o.json(&summary);
            } else {
                o.line(format!("points {}", x0.points()));
                o.line(format!("rank {}", x0.rank()));
                o.line(format!("modulus {}", omega.field().modulus_string()));
                o.line(format!("ordering {ORDERING_CONVENTION}"));
            }
            if let Some(path) = out {
                let doc = json!({
                    "points": x0.points(), "rank": x0.rank(),
                    "names": x0.names(), "colors": x0.colors(),
                    "modulus": omega.field().modulus_string(),
                    "ordering_convention": ORDERING_CONVENTION,
                });
                o.files.push((path.clone(), format!("{doc}\n").into_bytes()));
            }
        }
        SchemeCmd::Verify {
            tatra,
            group_ring_samples,
        } => {
            let omega = omega_for(tatra, o)?;
            let x0 = Scheme::tatra(&omega);
            let verdict = verify_scheme(&x0);
            let identities = check_structure_identities(&omega);
            let mut sampled = Vec::new();
            if *group_ring_samples > 0 {
                let t = TatraMatrices::new(&omega);
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let n = omega.n() as usize;
                for _ in 0..*group_ring_samples {
                    let mut elt = || GroupRingElt {
                        coeffs: (0..n).map(|_| rng.gen_range(-3..=3)).collect(),
                    };
                    let (xi, eta) = (elt(), elt());
                    sampled.push(check_group_ring_identities(&t, &xi, &eta));
                }
            }
            let sampled_failures: Vec<&String> = sampled.iter().filter_map(|r| r.as_ref().err()).collect();
            let ok = verdict.is_valid() && identities.iter().all(|r| r.holds()) && sampled_failures.is_empty();
            if cli.json {
                o.json(&json!({
                    "verdict": verdict,
                    "identities": identities,
                    "group_ring_samples": sampled.len(),
                    "group_ring_failures": sampled_failures,
                }));
            } else {
                match &verdict {
                    SchemeVerdict::Valid(c) => {
                        o.line(format!(
                            "scheme valid: points {} rank {} mode {:?}",
                            c.points, c.rank, c.mode
                        ));
                        o.line(format!("valencies {}", tuple(&c.valencies)));
                        o.line(format!("commutative {}", c.commutative));
                        o.line(format!("tensor sha256 {}", c.tensor_hash));
                    }
                    SchemeVerdict::Violation(v) => {
                        o.line(format!("scheme violation: {}", serde_json::to_string(v).unwrap()))
                    }
                }
                for r in &identities {
                    let status = if r.holds() { "holds" } else { "FAILS" };
                    o.line(format!("identity {status} ({} instances): {}", r.instances, r.name));
                    if let Some(f) = &r.failure {
                        o.line(format!("  {f}"));
                    }
                }
                if !sampled.is_empty() {
                    o.line(format!(
                        "group-ring identities: {} of {} random pairs hold",
                        sampled.len() - sampled_failures.len(),
                        sampled.len()
                    ));
                }
            }
            o.exit_code = if ok { 0 } else { 1 };
        }
        SchemeCmd::Fuse { tatra, multipliers, ds } => {
            let omega = omega_for(tatra, o)?;
            let x0 = Scheme::tatra(&omega);
            let n = omega.n() as usize;
            let a = if !ds.is_empty() {
                designs::certify(omega.n(), ds)?;
                SRing::from_difference_set(n, ds)
            } else if !multipliers.is_empty() {
                SRing::cyclotomic(n, multipliers)
            } else {
                return Err(Error::BadParameters("pass --multipliers or --ds".into()));
            };
            let fused = fuse_scheme(&x0, &a)?;
            let verdict = verify_scheme(&fused);
            if cli.json {
                o.json(&json!({ "names": fused.names(), "verdict": verdict }));
            } else {
                o.line(format!("fused rank {}", fused.rank()));
                o.line(format!("relations {}", fused.names().join(" ")));
                match verdict.certificate() {
                    Some(c) => o.line(format!("scheme valid: commutative {}", c.commutative)),
                    None => o.line("fusion is not a scheme"),
                }
            }
            o.exit_code = if verdict.is_valid() { 0 } else { 1 };
        }
        SchemeCmd::Aut { tatra, predict } => {
            let omega = omega_for(tatra, o)?;
            let x0 = Scheme::tatra(&omega);
            let s = ColoredStructure::from_scheme(&x0)?;
            let aut = iso::automorphism_order(&s)?;
            let schurian = iso::schurian_check(&x0, &aut);
            let predicted = if *predict {
                Some(iso::predicted_scheme_aut(&omega)?)
            } else {
                None
            };
            if cli.json {
                o.json(&json!({ "automorphisms": aut, "schurian": schurian, "predicted": predicted }));
            } else {
                o.line(format!("order {}", aut.order));
                o.line(format!("generators {}", aut.generators.len()));
                o.line(format!("orbits {}", aut.orbits.len()));
                o.line(format!("schurian {schurian}"));
                if let Some(p) = predicted {
                    o.line(format!(
                        "predicted {} ({} semilinear maps)",
                        p.distinct_permutations, p.maps_enumerated
                    ));
                }
            }
        }
    }
    Ok(())
}

fn dsrg_report(verdict: &DsrgVerdict, json: bool, o: &mut Outcome) {
    if json {
        o.json(&json!({ "certificate": verdict }));
        return;
    }
    match verdict {
        DsrgVerdict::Dsrg {
            params: p,
            srg,
            matrix_checked,
        } => o.line(format!(
            "certificate dsrg {} srg {srg} matrix-checked {matrix_checked}",
            tuple(&[p.v, p.k, p.t, p.lambda, p.mu])
        )),
        DsrgVerdict::NotDsrg { violation } => {
            o.line(format!("not a dsrg: {}", serde_json::to_string(violation).unwrap()))
        }
    }
}

fn dsrg_cmd(cli: &Cli, cmd: &DsrgCmd, o: &mut Outcome) -> Result<()> {
    match cmd {
        DsrgCmd::Build {
            p,
            q,
            i,
            g,
            verify,
            out,
        } => {
            let omega = omega_for(&TatraArgs { q: *q, n: *p }, o)?;
            if !graphs::dsrg_condition(*p as u64, *q) && !cli.json {
                o.line(format!("note: q - 1 != p(p-3)/4 for (p, q) = ({p}, {q})"));
            }
            let gamma = graphs::build_dsrg(&omega, *i, *g)?;
            if !cli.json {
                o.line(format!("vertices {}", gamma.vertex_count()));
                o.line(format!("arcs {}", gamma.arc_count()));
            }
            if *verify {
                let verdict = graphs::verify_dsrg(&gamma)?;
                dsrg_report(&verdict, cli.json, o);
                o.exit_code = if verdict.params().is_some() { 0 } else { 1 };
            }
            write_graph(&gamma, out, GraphFormat::Digraph6, o)?;
        }
        DsrgCmd::Verify { input } => {
            let g = read_graph(input)?;
            let verdict = graphs::verify_dsrg(&g)?;
            dsrg_report(&verdict, cli.json, o);
            o.exit_code = if verdict.params().is_some() { 0 } else { 1 };
        }
        DsrgCmd::Iso { p, q, i1, g1, i2, g2 } => {
            let omega = omega_for(&TatraArgs { q: *q, n: *p }, o)?;
            let a = ColoredStructure::from_digraph(&graphs::build_dsrg(&omega, *i1, *g1)?);
            let b = ColoredStructure::from_digraph(&graphs::build_dsrg(&omega, *i2, *g2)?);
            let reason = iso::invariant_mismatch(&a, &b);
            let witness = match reason {
                Some(_) => None,
                None => iso::are_isomorphic(&a, &b)?,
            };
            let why = match (&reason, &witness) {
                (Some(r), _) => r.clone(),
                (None, None) => "canonical forms differ".into(),
                (None, Some(_)) => "equal canonical forms".into(),
            };
            if cli.json {
                o.json(&json!({ "isomorphic": witness.is_some(), "reason": why, "witness": witness }));
            } else {
                let verdict = if witness.is_some() {
                    "isomorphic"
                } else {
                    "nonisomorphic"
                };
                o.line(format!("Gamma({i1},{g1}) vs Gamma({i2},{g2}): {verdict} ({why})"));
            }
        }
    }
    Ok(())
}

fn choose_ds(n: u32, c: &DsChoice) -> Result<DifferenceSet> {
    let ds = if c.paley {
        designs::paley_ds(n)?
    } else if let [r, d] = c.singer[..] {
        designs::singer_ds(r, d)?
    } else if !c.ds.is_empty() {
        designs::certify(n, &c.ds)?
    } else {
        return Err(Error::BadParameters("pass --ds, --paley or --singer".into()));
    };
    if c.complement {
        designs::complement_ds(&ds)
    } else {
        Ok(ds)
    }
}

fn ddg_report(verdict: &DdgVerdict, json: bool, o: &mut Outcome) {
    if json {
        o.json(&json!({ "certificate": verdict }));
        return;
    }
    match verdict {
        DdgVerdict::Ddg {
            params: p,
            proper,
            matrix_checked,
        } => o.line(format!(
            "certificate ddg {} proper {proper} matrix-checked {matrix_checked}",
            tuple(&[p.v, p.k, p.lambda1, p.lambda2, p.m, p.n])
        )),
        DdgVerdict::NotDdg { violation } => o.line(format!("not a ddg: {}", serde_json::to_string(violation).unwrap())),
    }
}

fn ddg_cmd(cli: &Cli, cmd: &DdgCmd, o: &mut Outcome) -> Result<()> {
    match cmd {
        DdgCmd::Build {
            tatra,
            choice,
            verify,
            out,
        } => {
            let omega = omega_for(tatra, o)?;
            let ds = choose_ds(tatra.n, choice)?;
            let delta = graphs::build_ddg(&omega, &ds)?;
            if !cli.json {
                o.line(format!("difference set {}", ds.catalog_line()));
                o.line(format!("vertices {}", delta.vertex_count()));
                o.line(format!("edges {}", delta.arc_count() / 2));
                let (q, n, k, l) = (
                    omega.q() as u64,
                    ds.n as u64,
                    ds.params.k as u64,
                    ds.params.lambda as u64,
                );
                if let Some(srg) = graphs::srg_condition(q, n, k, l) {
                    o.line(format!(
                        "srg condition holds: {}",
                        tuple(&[srg.v, srg.k, srg.lambda, srg.mu])
                    ));
                }
            }
            if *verify {
                let verdict = graphs::verify_ddg(&delta, delta.partition.as_ref().expect("lines"))?;
                let square = if omega.len() <= 2000 {
                    Some(graphs::check_ddg_square(&omega, &ds)?)
                } else {
                    None
                };
                ddg_report(&verdict, cli.json, o);
                if let Some(sq) = square {
                    if cli.json {
                        o.json(&json!({ "b_d_squared_identity": sq }));
                    } else {
                        o.line(format!("B_D^2 identity {}", if sq { "holds" } else { "FAILS" }));
                    }
                }
                o.exit_code = if verdict.params().is_some() && square != Some(false) {
                    0
                } else {
                    1
                };
            }
            write_graph(&delta, out, GraphFormat::Graph6, o)?;
        }
        DdgCmd::Verify { input, class_size } => {
            let g = read_graph(input)?;
            let v = g.vertex_count();
            let partition = match (&g.partition, class_size) {
                (_, Some(n)) if *n > 0 && v % n == 0 => (0..v / n)
                    .map(|c| ((c * n) as u32..((c + 1) * n) as u32).collect())
                    .collect(),
                (_, Some(n)) => return Err(Error::BadParameters(format!("class size {n} does not divide {v}"))),
                (Some(p), None) => p.clone(),
                (None, None) => {
                    return Err(Error::BadParameters(
                        "the input has no partition; pass --class-size".into(),
                    ))
                }
            };
            let verdict = graphs::verify_ddg(&g, &partition)?;
            ddg_report(&verdict, cli.json, o);
            o.exit_code = if verdict.params().is_some() { 0 } else { 1 };
        }
    }
    Ok(())
}

fn ds_cmd(cli: &Cli, cmd: &DsCmd, o: &mut Outcome) -> Result<()> {
    let show = |ds: &DifferenceSet, o: &mut Outcome| {
        if cli.json {
            o.json(&serde_json::to_value(ds).unwrap());
        } else {
            o.line(ds.catalog_line());
        }
    };
    match cmd {
        DsCmd::Make {
            kind,
            n,
            r,
            d,
            complement,
        } => {
            let need = |x: Option<u32>, name: &str| {
                x.ok_or_else(|| Error::BadParameters(format!("--{name} is required for this kind")))
            };
            let ds = match kind {
                DsKind::Paley => designs::paley_ds(need(*n, "n")?)?,
                DsKind::Singer => designs::singer_ds(need(*r, "r")?, need(*d, "d")?)?,
                DsKind::Singleton => designs::trivial_ds(need(*n, "n")?, TrivialKind::Singleton)?,
                DsKind::ComplementSingleton => designs::trivial_ds(need(*n, "n")?, TrivialKind::ComplementSingleton)?,
                DsKind::Full => designs::trivial_ds(need(*n, "n")?, TrivialKind::Full)?,
            };
            let ds = if *complement { designs::complement_ds(&ds)? } else { ds };
            show(&ds, o);
        }
        DsCmd::Verify { n, elements } => match designs::verify_ds(*n, elements) {
            Some(p) => {
                if cli.json {
                    o.json(&json!({ "params": p }));
                } else {
                    o.line(format!("difference set ({},{},{})", p.n, p.k, p.lambda));
                }
            }
            None => {
                if cli.json {
                    o.json(&json!({ "params": null }));
                } else {
                    o.line("not a difference set");
                }
                o.exit_code = 1;
            }
        },
        DsCmd::Equiv { n, a, b } => {
            let (da, db) = (designs::certify(*n, a)?, designs::certify(*n, b)?);
            let w = designs::ds_equivalent(&da, &db);
            if cli.json {
                o.json(&json!({ "equivalent": w.is_some(), "witness": w }));
            } else {
                match w {
                    Some(w) => o.line(format!("equivalent: {} * A + {} = B", w.multiplier, w.shift)),
                    None => o.line("inequivalent"),
                }
            }
        }
        DsCmd::List => {
            let cat = designs::catalog();
            if cli.json {
                o.json(&serde_json::to_value(&cat).unwrap());
            } else {
                for ds in &cat {
                    o.line(ds.catalog_line());
                }
            }
        }
    }
    Ok(())
}

fn drg_cmd(cli: &Cli, cmd: &DrgCmd, o: &mut Outcome) -> Result<()> {
    let DrgCmd::Check { q, n, g, input } = cmd;
    let graph = match (input, q, n) {
        (Some(path), _, _) => read_graph(&GraphIn {
            input: path.clone(),
            input_format: None,
        })?,
        (None, Some(q), Some(n)) => {
            let omega = omega_for(&TatraArgs { q: *q, n: *n }, o)?;
            if *g >= *n {
                return Err(Error::BadParameters(format!("g = {g} is not in Z_{n}")));
            }
            ColoredDigraph::new(omega.s_union(&[*g]))
        }
        _ => return Err(Error::BadParameters("pass --q and --n, or --input".into())),
    };
    let verdict = graphs::distance_regular_check(&graph)?;
    if cli.json {
        o.json(&serde_json::to_value(&verdict).unwrap());
    } else {
        match &verdict {
            DrgVerdict::Drg(a) => {
                o.line(format!("intersection array {}", a.display()));
                o.line(format!("diameter {}", a.diameter));
                o.line(format!("antipodal {}", a.antipodal));
            }
            DrgVerdict::NotDrg { vertex, reason } => o.line(format!("not distance-regular at {vertex}: {reason}")),
        }
    }
    o.exit_code = if verdict.array().is_some() { 0 } else { 1 };
    Ok(())
}

fn search_cmd(cmd: &SearchCmd, o: &mut Outcome) -> Result<()> {
    match cmd {
        SearchCmd::Pairs {
            max_q,
            prime_q,
            output,
            count,
        } => {
            let mode = if *prime_q {
                SearchMode::PrimeQ
            } else {
                SearchMode::PrimePowerQ
            };
            let pairs = search::search_pairs(*max_q, mode)?;
            if *count {
                o.line(format!("count {}", pairs.len()));
                return Ok(());
            }
            match output {
                TableFormat::Table => {
                    o.line("p q r d both_prime");
                    for x in &pairs {
                        o.line(x.table_row());
                    }
                    o.line(format!("count {}", pairs.len()));
                }
                TableFormat::Csv => {
                    o.line("p,q,r,d,both_prime");
                    for x in &pairs {
                        o.line(x.csv_row());
                    }
                }
                TableFormat::Json => o.json(&serde_json::to_value(&pairs).unwrap()),
            }
        }
        SearchCmd::Bh { max_t } => {
            for t in search::bateman_horn_t(*max_t)? {
                let (p, q) = search::pair_of_t(t);
                o.line(format!("{t} {p} {q}"));
            }
        }
    }
    Ok(())
}

/// Flags and values of `argv` as a sorted map.
fn parameters_of(argv: &[String]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < argv.len() {
        if let Some(key) = argv[i].strip_prefix("--") {
            match argv.get(i + 1).filter(|v| !v.starts_with("--")) {
                Some(v) => {
                    out.insert(key.to_string(), v.clone());
                    i += 1;
                }
                None => {
                    out.insert(key.to_string(), "true".into());
                }
            }
        } else {
            out.entry("command".to_string())
                .and_modify(|c: &mut String| {
                    c.push(' ');
                    c.push_str(&argv[i]);
                })
                .or_insert_with(|| argv[i].clone());
        }
        i += 1;
    }
    out
}

/// Removes `--emit-manifest PATH` from an argument list.
pub fn strip_manifest_flag(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
        } else if a == "--emit-manifest" {
            skip = true;
        } else if !a.starts_with("--emit-manifest=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn manifest_for(argv: &[String], outcome: &Outcome, created_unix: Option<u64>) -> RunManifest {
    let mut hashes = BTreeMap::new();
    hashes.insert("stdout".to_string(), io::sha256_hex(outcome.stdout.as_bytes()));
    for (path, bytes) in &outcome.files {
        hashes.insert(path.display().to_string(), io::sha256_hex(bytes));
    }
    RunManifest {
        command: argv.to_vec(),
        parameters: parameters_of(argv),
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        field_modulus: outcome.field_modulus.clone(),
        ordering_convention: ORDERING_CONVENTION.to_string(),
        output_hashes: hashes,
        exit_code: outcome.exit_code,
        created_unix,
    }
}

/// Parses `argv` (without the program name) and runs it in memory.
pub fn run_args(argv: &[String]) -> Result<Outcome> {
    let cli = Cli::try_parse_from(std::iter::once("scheme-forge".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| Error::Parse(e.to_string()))?;
    run(&cli)
}

fn replay(path: &PathBuf, o: &mut Outcome) -> Result<()> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let manifest = RunManifest::from_json(&text)?;
    if manifest.command.first().map(String::as_str) == Some("replay") {
        return Err(Error::BadParameters("a manifest cannot replay a replay".into()));
    }
    let rerun = run_args(&manifest.command)?;
    manifest.check_conventions(rerun.field_modulus.as_deref(), ORDERING_CONVENTION)?;
    let fresh = manifest_for(&manifest.command, &rerun, manifest.created_unix);
    if fresh.same_run(&manifest) {
        o.line(format!("replay identical: {}", manifest.command.join(" ")));
    } else {
        o.line(format!("replay differs: {}", manifest.command.join(" ")));
        for (k, v) in &manifest.output_hashes {
            if fresh.output_hashes.get(k) != Some(v) {
                o.line(format!(
                    "  {k}: recorded {v}, got {}",
                    fresh.output_hashes.get(k).map_or("nothing", |s| s)
                ));
            }
        }
        o.exit_code = 1;
    }
    Ok(())
}

/// Applies the thread cap from the environment, if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
