//! Command-line front end. `run` writes to the given streams and returns an
//! error carrying the exit status; the binary only wires it to the process.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid::BraidWord;
use crate::diagram::LinkDiagram;
use crate::dimer::{kasteleyn_violations, run_pipeline, signed_overlay, writhe_factor, ModifiedAdjacencyMatrix};
use crate::kauffman::{f2q, k2q, K2qMethod};
use crate::laurent::LaurentPoly1;
use crate::oracle::{bracket_state_sum_with, OracleError, StateSumOptions, DEFAULT_CAP};
use crate::overlay::OverlayGraph;
use crate::tait::TaitGraph;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "braid-dimer", version, about = "Jones and Kauffman polynomials of homogeneous braid closures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jones polynomial in the variable A.
    Jones(PolyArgs),
    /// Kauffman bracket (no writhe correction).
    Bracket(PolyArgs),
    /// Kauffman polynomial of the (2, q) torus link.
    Kauffman(KauffmanArgs),
    /// Kasteleyn-signed modified adjacency matrix.
    Matrix(MatrixArgs),
    /// Tait graph, its dual, or the overlaid Tait graph.
    Graph(GraphArgs),
    /// Cross-check every method on one word or on the bounded family corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    /// Braid word such as "s1^3 s2^-2".
    #[arg(long)]
    pub braid: String,
    /// Strand count (defaults to the largest generator plus one).
    #[arg(long)]
    pub strands: Option<usize>,
    /// Print the diagram as JSON on stderr.
    #[arg(long)]
    pub debug_diagram: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Det,
    Matchings,
    Trees,
    Statesum,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Det, Method::Matchings, Method::Trees, Method::Statesum];

    fn name(self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Matchings => "matchings",
            Method::Trees => "trees",
            Method::Statesum => "statesum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long, value_enum, default_value = "det")]
    pub method: Method,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Crossing cap for the exponential methods.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub max_crossings: usize,
    /// Parallel state-sum reduction.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KMethod {
    Skein,
    Prop,
    Closed,
}

impl From<KMethod> for K2qMethod {
    fn from(m: KMethod) -> Self {
        match m {
            KMethod::Skein => K2qMethod::Skein,
            KMethod::Prop => K2qMethod::Prop,
            KMethod::Closed => K2qMethod::Closed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct KauffmanArgs {
    #[arg(long)]
    pub q: i64,
    #[arg(long, value_enum, default_value = "skein")]
    pub method: KMethod,
    /// Unnormalized polynomial K (default).
    #[arg(long, conflicts_with = "normalized")]
    pub framed: bool,
    /// Writhe-normalized polynomial a^-q K.
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub word: WordArgs,
    /// Show signed activity letters instead of their bracket values.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Tait,
    Dual,
    Overlay,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub word: WordArgs,
    #[arg(long, value_enum, default_value = "overlay")]
    pub kind: GraphKind,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "corpus")]
    pub braid: Option<String>,
    #[arg(long)]
    pub strands: Option<usize>,
    /// Sweep s1^m1 ... s(n-1)^m(n-1) for 2 <= n <= 4, 1 <= |m_i| <= 4, both signs.
    #[arg(long)]
    pub corpus: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub max_crossings: usize,
    #[arg(long)]
    pub parallel: bool,
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn parse_word(args: &WordArgs, err: &mut dyn Write) -> Result<(BraidWord, LinkDiagram)> {
    let w = BraidWord::parse(&args.braid, args.strands)?;
    let d = LinkDiagram::close_braid(&w)?;
    if args.debug_diagram {
        writeln!(err, "{}", d.to_json()).map_err(io)?;
    }
    Ok((w, d))
}

fn check_cap(w: &BraidWord, cap: usize) -> Result<()> {
    if w.crossing_count() > cap {
        return Err(OracleError::TooManyCrossings { crossings: w.crossing_count(), cap }.into());
    }
    Ok(())
}

/// Kauffman bracket of the closure of `w` by the chosen method.
pub fn bracket_by(w: &BraidWord, d: &LinkDiagram, method: Method, opts: StateSumOptions) -> Result<LaurentPoly1> {
    match method {
        Method::Det => Ok(run_pipeline(w)?.bracket),
        Method::Matchings => {
            check_cap(w, opts.cap)?;
            let (_, g) = signed_overlay(w)?;
            Ok(g.partition_function())
        }
        Method::Trees => {
            check_cap(w, opts.cap)?;
            Ok(TaitGraph::build(d).thistlethwaite_sum())
        }
        Method::Statesum => Ok(bracket_state_sum_with(d, opts)?.bracket),
    }
}

pub fn jones_by(w: &BraidWord, d: &LinkDiagram, method: Method, opts: StateSumOptions) -> Result<LaurentPoly1> {
    Ok(&writhe_factor(w.writhe()) * &bracket_by(w, d, method, opts)?)
}

fn emit_poly(out: &mut dyn Write, format: Format, w: &BraidWord, method: Method, kind: &str, p: &LaurentPoly1) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{p}"),
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "braid": w.to_string(),
                "invariant": kind,
                "method": method.name(),
                "text": p.to_string(),
                "polynomial": p.to_json(),
            })
        ),
        Format::Dot => return Err(Error::Usage("dot output is only available for `graph`".into())),
    }
    .map_err(io)
}

fn cmd_poly(a: &PolyArgs, jones: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (w, d) = parse_word(&a.word, err)?;
    let opts = StateSumOptions { cap: a.max_crossings, parallel: a.parallel };
    let (p, kind) = if jones {
        (jones_by(&w, &d, a.method, opts)?, "jones")
    } else {
        (bracket_by(&w, &d, a.method, opts)?, "bracket")
    };
    emit_poly(out, a.format, &w, a.method, kind, &p)
}

fn cmd_kauffman(a: &KauffmanArgs, out: &mut dyn Write) -> Result<()> {
    let method = a.method.into();
    let p = if a.normalized { f2q(a.q, method)? } else { k2q(a.q, method)? };
    match a.format {
        Format::Text => writeln!(out, "{p}"),
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "q": a.q, "normalized": a.normalized, "text": p.to_string(), "polynomial": p.to_json() })
        ),
        Format::Dot => return Err(Error::Usage("dot output is only available for `graph`".into())),
    }
    .map_err(io)
}

fn cmd_matrix(a: &MatrixArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (w, _) = parse_word(&a.word, err)?;
    let (_, g) = signed_overlay(&w)?;
    let m = ModifiedAdjacencyMatrix::from_overlay(&g);
    match a.format {
        Format::Text => write!(out, "{}", m.to_text(a.symbolic)),
        Format::Json => writeln!(out, "{}", m.to_json(a.symbolic)),
        Format::Dot => return Err(Error::Usage("dot output is only available for `graph`".into())),
    }
    .map_err(io)
}

fn tait_json(t: &TaitGraph) -> Value {
    json!({
        "vertices": t.vertices,
        "edges": t.edges.iter().map(|e| json!({
            "ends": e.ends,
            "sign": e.sign.value(),
            "crossing": e.crossing,
        })).collect::<Vec<_>>(),
    })
}

fn overlay_json(g: &OverlayGraph) -> Value {
    json!({
        "crossings": g.crossing_ids(),
        "faces": g.faces().iter().map(|f| json!({ "face": f.face, "shaded": f.shaded })).collect::<Vec<_>>(),
        "deleted": g.deleted(),
        "edges": g.edges().iter().map(|e| json!({
            "row": e.crossing,
            "column": e.column,
            "letter": e.letter.ascii(),
            "kasteleyn": e.kasteleyn.value(),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_graph(a: &GraphArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (w, d) = parse_word(&a.word, err)?;
    let rendered = match (a.kind, a.format) {
        (GraphKind::Tait, Format::Dot) => TaitGraph::build(&d).to_dot(None),
        (GraphKind::Dual, Format::Dot) => TaitGraph::dual(&d).to_dot(None),
        (GraphKind::Tait, _) => format!("{}\n", tait_json(&TaitGraph::build(&d))),
        (GraphKind::Dual, _) => format!("{}\n", tait_json(&TaitGraph::dual(&d))),
        (GraphKind::Overlay, f) => {
            let (_, g) = signed_overlay(&w)?;
            if f == Format::Dot {
                g.to_dot()
            } else {
                format!("{}\n", overlay_json(&g))
            }
        }
    };
    write!(out, "{rendered}").map_err(io)
}

/// Outcome of cross-checking one word.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub word: BraidWord,
    pub jones: Vec<(Method, LaurentPoly1)>,
    pub matchings: usize,
    pub trees: usize,
    pub partition_equals_det: bool,
    pub kasteleyn_violations: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.jones.windows(2).all(|p| p[0].1 == p[1].1)
            && self.matchings == self.trees
            && self.partition_equals_det
            && self.kasteleyn_violations == 0
    }
}

pub fn verify_word(w: &BraidWord, opts: StateSumOptions) -> Result<VerifyReport> {
    if !w.is_homogeneous_family() {
        return Err(crate::dimer::DimerError::UnsupportedWord(w.to_string()).into());
    }
    check_cap(w, opts.cap)?;
    let pipe = run_pipeline(w)?;
    let d = &pipe.diagram;
    let wf = writhe_factor(w.writhe());
    let z = pipe.overlay.partition_function();
    let tait = TaitGraph::build(d);
    let statesum = bracket_state_sum_with(d, opts)?.bracket;
    let jones = vec![
        (Method::Det, pipe.jones.clone()),
        (Method::Matchings, &wf * &z),
        (Method::Trees, &wf * &tait.thistlethwaite_sum()),
        (Method::Statesum, &wf * &statesum),
    ];
    let mut trees = 0;
    tait.for_each_spanning_tree(|_| trees += 1);
    Ok(VerifyReport {
        word: w.clone(),
        jones,
        matchings: pipe.overlay.perfect_matchings().len(),
        trees,
        partition_equals_det: z == pipe.bracket,
        kasteleyn_violations: kasteleyn_violations(&pipe.overlay, false).len(),
    })
}

/// Homogeneous words with `2 <= n <= 4` strands and `1 <= |m_i| <= 4`, all
/// exponents positive or all negative.
pub fn family_corpus() -> Vec<BraidWord> {
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        for gens in 1..=3u32 {
            for k in 0..4usize.pow(gens) {
                let exps: Vec<i64> =
                    (0..gens).map(|i| sign * (1 + (k / 4usize.pow(i) % 4) as i64)).collect();
                out.push(BraidWord::homogeneous(&exps).expect("valid family word"));
            }
        }
    }
    out
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let opts = StateSumOptions { cap: a.max_crossings, parallel: a.parallel };
    if a.corpus {
        let corpus = family_corpus();
        let mut failures = Vec::new();
        for w in &corpus {
            let r = verify_word(w, opts)?;
            if !r.passed() {
                writeln!(out, "FAIL {w}").map_err(io)?;
                failures.push(w.to_string());
            }
        }
        writeln!(out, "{} words, {} failures", corpus.len(), failures.len()).map_err(io)?;
        if !failures.is_empty() {
            return Err(Error::Mismatch(failures.join(", ")));
        }
        writeln!(out, "PASS").map_err(io)?;
        return Ok(());
    }
    let text = a.braid.as_deref().unwrap_or_default();
    let w = BraidWord::parse(text, a.strands)?;
    let r = verify_word(&w, opts)?;
    for (m, p) in &r.jones {
        writeln!(out, "{:<10} {p}", m.name()).map_err(io)?;
    }
    writeln!(out, "matchings: {}, trees: {}", r.matchings, r.trees).map_err(io)?;
    writeln!(out, "kasteleyn violations: {}", r.kasteleyn_violations).map_err(io)?;
    if r.passed() {
        writeln!(out, "PASS").map_err(io)?;
        Ok(())
    } else {
        writeln!(out, "FAIL").map_err(io)?;
        Err(Error::Mismatch(w.to_string()))
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Jones(a) => cmd_poly(a, true, out, err),
        Command::Bracket(a) => cmd_poly(a, false, out, err),
        Command::Kauffman(a) => cmd_kauffman(a, out),
        Command::Matrix(a) => cmd_matrix(a, out, err),
        Command::Graph(a) => cmd_graph(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
    }
}
