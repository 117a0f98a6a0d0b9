//! Command-line surface: argument parsing, dispatch and report rendering.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::algebra::Monomial;
use crate::bar::{BarElem, JsonBasis};
use crate::cycle::{check_dga_morphism, rho, Cycle, VarSupply};
use crate::error::Error;
use crate::numint::{
    iterint, numeric_pathcomp_check, numeric_shuffle_check, parse_complex, IterintOptions, NumCheck,
    PathPolyline, C, CONVENTION, LI_CONVENTION_SIGN,
};
use crate::picom::{check_coassociativity, check_counit, coaction, coaction_degrees, words_up_to, PathWord};
use crate::polyint::{
    dec, is_closed, is_generic, motivic_ii, t_poly, verify_antipode, verify_coproduct,
    verify_path_composition, verify_prop_tree, verify_shuffle, Identity, Seq,
};
use crate::random::LabelGen;
use crate::rational::{format_q, parse_q, Q};
use crate::suite::{self, CriterionReport, SuiteConfig};
use crate::tree::{binary_shapes, make_tree};
use crate::zeta::{rho_nmk, zeta_cycle, zeta_double_element};

pub const SCHEMA: &str = "motivic-forest/1";
pub const SEED_ENV: &str = "MOTIVIC_FOREST_SEED";
const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Usage,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Usage => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Usage => "usage-error",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    /// Rendered report: JSON under `--json`, plain text otherwise.
    pub report: String,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

#[derive(Parser, Debug)]
#[command(name = "motivic-forest", version, about = "Decorated trees, bar elements and cubical cycles for iterated integrals")]
struct Cli {
    /// Machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Graphviz output where trees are produced
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for random label generation (default from $MOTIVIC_FOREST_SEED, else 7)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Upper bound on sequence lengths for randomized checks
    #[arg(long = "max-n", global = true, default_value_t = 5)]
    max_n: usize,
    /// Numerical tolerance
    #[arg(long, global = true, default_value = "1e-10")]
    tol: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tree enumeration
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Checks in the tree algebra
    #[command(subcommand)]
    Dga(DgaCmd),
    /// Exact identities for T(a)
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Cubical cycles
    #[command(subcommand)]
    Cycle(CycleCmd),
    /// The combinatorial path torsor
    #[command(subcommand)]
    Picom(PicomCmd),
    /// Numerical iterated integrals
    #[command(subcommand)]
    Num(NumCmd),
}

#[derive(Subcommand, Debug)]
enum TreesCmd {
    /// All 3-valent planar trees with the given root and leaves
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Comma-separated leaf labels
        #[arg(long, allow_hyphen_values = true)]
        leaves: String,
    },
}

#[derive(Subcommand, Debug)]
enum DgaCmd {
    /// d² = 0 on small trees and random forests
    D2,
}

#[derive(Args, Debug)]
struct SeqArg {
    /// Sequence "a0;a1,...,an;a_end" (random generic sequences when omitted)
    #[arg(long, allow_hyphen_values = true)]
    seq: Option<String>,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Differential of t(a) against the block formula
    PropTree(SeqArg),
    /// d T(a) = 0 in the bar construction
    BarClosed {
        #[command(flatten)]
        seq: SeqArg,
        /// Reject non-generic sequences
        #[arg(long)]
        strict_generic: bool,
    },
    /// Shuffle product formula
    Shuffle {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Path composition through an intermediate point
    Pathcomp {
        #[command(flatten)]
        seq: SeqArg,
        /// Intermediate point (random when omitted)
        #[arg(long, allow_hyphen_values = true)]
        via: Option<String>,
    },
    /// Path reversal
    Antipode(SeqArg),
    /// Coproduct formula
    Coproduct(SeqArg),
    /// Every criterion of the suite
    All,
}

#[derive(Subcommand, Debug)]
enum CycleCmd {
    /// Cycles of the letters of the motivic element of a generic sequence
    Build {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// d rho = rho d on the {0,1}-labelled t(a), or on all small trees
    DgaCheck(SeqArg),
    /// The single zeta cycle
    Zeta {
        #[arg(long)]
        n: usize,
    },
    /// The cycle rho(n,m,k)
    RhoNmk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// The bar element of the double zeta value
    ZetaDouble {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PicomCmd {
    /// Coaction of a word X_w on paths from --from to --to
    Coaction {
        /// Space-separated labels, e.g. "3 0 5"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Truncation degree (defaults to the word length)
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Coassociativity and counit on all words up to the truncation
    Coassoc {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Comma-separated alphabet S
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
}

#[derive(Subcommand, Debug)]
enum NumCmd {
    /// ∫ ω(s₁)…ω(sₙ) along a polyline
    Iterint {
        /// Comma-separated complex waypoints, e.g. "0,1/2+1/2j,1"
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        /// Comma-separated complex poles, first form innermost
        #[arg(long, allow_hyphen_values = true)]
        poles: String,
    },
    /// Numerical shuffle identity
    Shuffle {
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Numerical path composition identity
    Pathcomp {
        #[arg(long, allow_hyphen_values = true)]
        path1: String,
        #[arg(long, allow_hyphen_values = true)]
        path2: String,
        #[arg(long, allow_hyphen_values = true)]
        poles: String,
    },
}

/// Result of one command before rendering.
struct Outcome {
    status: Status,
    text: String,
    data: Value,
}

impl Outcome {
    fn new(ok: bool, text: impl Into<String>, data: Value) -> Self {
        Self { status: Status::of(ok), text: text.into(), data }
    }
}

struct Ctx {
    seed: u64,
    max_n: usize,
    tol: f64,
    dot: bool,
}

impl Ctx {
    fn suite(&self) -> SuiteConfig {
        SuiteConfig { seed: self.seed, max_n: self.max_n }
    }
}

fn parse_list(s: &str) -> Result<Vec<Q>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

fn parse_complex_list(s: &str) -> Result<Vec<C>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex).collect()
}

fn show_list(xs: &[Q]) -> String {
    xs.iter().map(format_q).collect::<Vec<_>>().join(",")
}

fn complex_json(z: C) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// The given sequence, or `count` random generic ones of every length up to `--max-n`.
fn sequences(arg: &SeqArg, ctx: &Ctx, id: u64, count: usize) -> Result<Vec<Seq>, Error> {
    if let Some(s) = &arg.seq {
        return Ok(vec![Seq::parse(s)?]);
    }
    let mut gen = LabelGen::new(ctx.seed.wrapping_add(id));
    let mut out = Vec::new();
    for n in 1..=ctx.max_n {
        for _ in 0..count {
            let l = gen.distinct(n + 2);
            out.push(Seq::new(l[0].clone(), l[1..=n].to_vec(), l[n + 1].clone()));
        }
    }
    Ok(out)
}

fn identity_outcome<T: PartialEq>(
    what: &str,
    seqs: &[Seq],
    mut check: impl FnMut(&Seq) -> Result<Identity<T>, Error>,
    size: impl Fn(&T) -> usize,
) -> Result<Outcome, Error> {
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for s in seqs {
        let id = check(s)?;
        let holds = id.holds();
        ok &= holds;
        lines.push(format!("{} {what} for {s} ({} terms)", if holds { "PASS" } else { "FAIL" }, size(&id.lhs)));
        cases.push(json!({ "seq": s.to_json(), "holds": holds, "lhs_terms": size(&id.lhs), "rhs_terms": size(&id.rhs) }));
    }
    Ok(Outcome::new(ok, lines.join("\n"), json!({ "cases": cases })))
}

fn criterion_outcome(r: CriterionReport) -> Outcome {
    let mut text = r.line();
    for f in &r.failures {
        text += &format!("\n  failure: {f}");
    }
    for n in &r.notes {
        text += &format!("\n  note: {n}");
    }
    Outcome::new(r.pass(), text, json!({ "criteria": [r.to_json()] }))
}

fn trees_enumerate(root: &str, leaves: &str, ctx: &Ctx) -> Result<Outcome, Error> {
    let root = parse_q(root)?;
    let leaves = parse_list(leaves)?;
    if leaves.is_empty() {
        return Err(Error::EmptyLeafList);
    }
    let trees: Vec<_> = binary_shapes(leaves.len())
        .iter()
        .map(|s| make_tree(root.clone(), s, &leaves, None))
        .collect::<Result<_, _>>()?;
    let text = if ctx.dot {
        trees.iter().enumerate().map(|(i, t)| t.to_dot(&format!("t{i}"))).collect::<String>()
    } else {
        let mut s = format!("{} trees", trees.len());
        for t in &trees {
            s += &format!("\n{t}");
        }
        s
    };
    let data = json!({
        "count": trees.len(),
        "trees": trees.iter().map(|t| serde_json::to_value(t.to_json()).expect("serializable")).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(true, text, data))
}

fn verify(cmd: &VerifyCmd, ctx: &Ctx) -> Result<Outcome, Error> {
    let bar_size = |x: &BarElem<Monomial>| x.len();
    match cmd {
        VerifyCmd::PropTree(arg) => {
            if arg.seq.is_none() {
                return Ok(criterion_outcome(suite::prop_tree(&ctx.suite())));
            }
            identity_outcome("differential of t(a)", &sequences(arg, ctx, 2, 1)?, |s| Ok(verify_prop_tree(s)), |x| x.len())
        }
        VerifyCmd::BarClosed { seq, strict_generic } => {
            let seqs = sequences(seq, ctx, 3, 2)?;
            let mut cases = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for s in &seqs {
                if *strict_generic && !is_generic(s) {
                    return Err(Error::NonGenericSequence(s.to_string()));
                }
                let closed = is_closed(s);
                ok &= closed;
                lines.push(format!("{} d T = 0 for {s}", if closed { "PASS" } else { "FAIL" }));
                cases.push(json!({ "seq": s.to_json(), "generic": is_generic(s), "closed": closed }));
            }
            Ok(Outcome::new(ok, lines.join("\n"), json!({ "cases": cases })))
        }
        VerifyCmd::Shuffle { from, left, right, to } => {
            let (a, b) = (parse_q(from)?, parse_q(to)?);
            let (s1, s2) = (parse_list(left)?, parse_list(right)?);
            let id = verify_shuffle(&a, &s1, &s2, &b);
            let holds = id.holds();
            let text = format!(
                "{} T({};{};{}) * T({};{};{}) = sum over shuffles ({} terms)",
                if holds { "PASS" } else { "FAIL" },
                format_q(&a), show_list(&s1), format_q(&b), format_q(&a), show_list(&s2), format_q(&b),
                id.lhs.len()
            );
            let data = json!({
                "from": format_q(&a), "left": s1.iter().map(format_q).collect::<Vec<_>>(),
                "right": s2.iter().map(format_q).collect::<Vec<_>>(), "to": format_q(&b),
                "holds": holds, "lhs_terms": id.lhs.len(), "rhs_terms": id.rhs.len(),
            });
            Ok(Outcome::new(holds, text, data))
        }
        VerifyCmd::Pathcomp { seq, via } => {
            let seqs = sequences(seq, ctx, 4, 1)?;
            let mut gen = LabelGen::new(ctx.seed.wrapping_add(40));
            let fixed = via.as_deref().map(parse_q).transpose()?;
            let mut cases = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for s in &seqs {
                let c = match &fixed {
                    Some(c) => c.clone(),
                    None => loop {
                        let c = gen.rational();
                        if !s.full().contains(&c) {
                            break c;
                        }
                    },
                };
                let id = verify_path_composition(s, &c);
                let holds = id.holds();
                ok &= holds;
                lines.push(format!("{} path composition for {s} via {}", if holds { "PASS" } else { "FAIL" }, format_q(&c)));
                cases.push(json!({ "seq": s.to_json(), "via": format_q(&c), "holds": holds, "terms": bar_size(&id.lhs) }));
            }
            Ok(Outcome::new(ok, lines.join("\n"), json!({ "cases": cases })))
        }
        VerifyCmd::Antipode(arg) => {
            identity_outcome("antipode", &sequences(arg, ctx, 5, 1)?, |s| Ok(verify_antipode(s)), bar_size)
        }
        VerifyCmd::Coproduct(arg) => {
            let mut arg_seqs = sequences(arg, ctx, 6, 1)?;
            if arg.seq.is_none() {
                arg_seqs.retain(|s| s.n() <= 4);
            }
            identity_outcome("coproduct", &arg_seqs, |s| Ok(verify_coproduct(s)), |x| x.len())
        }
        VerifyCmd::All => {
            let reports = suite::run_all(&ctx.suite());
            let ok = reports.iter().all(CriterionReport::pass);
            let mut text: Vec<String> = reports.iter().map(CriterionReport::line).collect();
            let passed = reports.iter().filter(|r| r.pass()).count();
            text.push(format!("{passed}/{} criteria pass", reports.len()));
            let data = json!({
                "seed": ctx.seed,
                "max_n": ctx.max_n,
                "criteria": reports.iter().map(CriterionReport::to_json).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(ok, text.join("\n"), data))
        }
    }
}

fn cycle_outcome(c: &Cycle, label: &str) -> Outcome {
    let text = format!("{label}: ambient {}, codimension {}\n{c}", c.ambient, c.codim);
    Outcome::new(true, text, json!({ "cycle": c.to_json() }))
}

fn cycle(cmd: &CycleCmd, ctx: &Ctx) -> Result<Outcome, Error> {
    match cmd {
        CycleCmd::Build { seq } => {
            let s = Seq::parse(seq)?;
            let x = motivic_ii(&s)?;
            let mut words = Vec::new();
            let mut lines = vec![format!("rho of the letters of the motivic element of {s}")];
            for (w, c) in x.terms.iter() {
                let cycles = w
                    .letters
                    .iter()
                    .map(|m| rho(&crate::algebra::AlgElem::basis(m.clone()), &mut VarSupply::default()))
                    .collect::<Result<Vec<_>, _>>()?;
                let shown: Vec<String> = cycles.iter().map(|c| c.to_string()).collect();
                lines.push(format!("({}) [{}]", format_q(c), shown.join(" | ")));
                words.push(json!({
                    "coeff": format_q(c),
                    "letters": w.letters.iter().map(JsonBasis::to_json).collect::<Vec<_>>(),
                    "cycles": cycles.iter().map(Cycle::to_json).collect::<Vec<_>>(),
                }));
            }
            Ok(Outcome::new(true, lines.join("\n"), json!({ "seq": s.to_json(), "words": words })))
        }
        CycleCmd::DgaCheck(arg) => {
            if arg.seq.is_none() {
                return Ok(criterion_outcome(suite::dga_morphism(&ctx.suite())));
            }
            let seqs = sequences(arg, ctx, 7, 1)?;
            identity_outcome("d rho = rho d", &seqs, |s| check_dga_morphism(&dec(&t_poly(s))?), |c| c.terms.len())
        }
        CycleCmd::Zeta { n } => Ok(cycle_outcome(&zeta_cycle(*n)?, &format!("zeta({n})"))),
        CycleCmd::RhoNmk { n, m, k } => Ok(cycle_outcome(&rho_nmk(*n, *m, *k)?, &format!("rho({n},{m},{k})"))),
        CycleCmd::ZetaDouble { n, m } => {
            let z = zeta_double_element(*n, *m)?;
            let mut text = format!("zeta({n},{m}): {} bar terms", z.element.len());
            for (l, mm, k, c) in &z.rho_terms {
                text += &format!("\n  ({}) [rho({l},{mm},{k})]", format_q(c));
            }
            for (a, b) in &z.dropped {
                text += &format!("\n  dropped [zeta({a})|zeta({b})]");
            }
            Ok(Outcome::new(true, text, z.to_json()))
        }
    }
}

fn picom(cmd: &PicomCmd) -> Result<Outcome, Error> {
    match cmd {
        PicomCmd::Coaction { word, from, to, trunc } => {
            let w = PathWord::parse(word)?;
            let (a, b) = (parse_q(from)?, parse_q(to)?);
            let trunc = trunc.unwrap_or(w.degree());
            let x = coaction(&w, &a, &b, trunc)?;
            let mut lines = vec![format!("coaction of {w} from {} to {}", format_q(&a), format_q(&b))];
            let mut terms = Vec::new();
            for ((u, letters), c) in x.iter() {
                let shown: Vec<String> = letters.iter().map(|m| m.to_string()).collect();
                lines.push(format!("({}) {u} ⊗ [{}]", format_q(c), shown.join(" | ")));
                terms.push(json!({
                    "coeff": format_q(c),
                    "word": u.0.iter().map(format_q).collect::<Vec<_>>(),
                    "letters": letters.iter().map(JsonBasis::to_json).collect::<Vec<_>>(),
                }));
            }
            let data = json!({ "degrees": coaction_degrees(&x), "terms": terms });
            Ok(Outcome::new(true, lines.join("\n"), data))
        }
        PicomCmd::Coassoc { from, to, labels, trunc } => {
            let (a, b) = (parse_q(from)?, parse_q(to)?);
            let s = parse_list(labels)?;
            let coassoc = check_coassociativity(&a, &b, &s, *trunc);
            let counit = check_counit(&a, &b, &s, *trunc);
            let words = words_up_to(&s, *trunc).len();
            let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
            let text = format!(
                "{} coassociativity\n{} counit\n({words} words over {{{}}} up to degree {trunc})",
                mark(coassoc),
                mark(counit),
                show_list(&s)
            );
            let data = json!({ "coassociative": coassoc, "counit": counit, "words": words, "trunc": trunc });
            Ok(Outcome::new(coassoc && counit, text, data))
        }
    }
}

fn num_check_outcome(what: &str, c: &NumCheck) -> Outcome {
    let text = format!("{} {what}: |lhs - rhs| = {:.3e} (tol {:.1e})", if c.holds() { "PASS" } else { "FAIL" }, c.diff(), c.tol);
    let data = json!({ "lhs": complex_json(c.lhs), "rhs": complex_json(c.rhs), "diff": c.diff(), "tol": c.tol });
    Outcome::new(c.holds(), text, data)
}

fn num(cmd: &NumCmd, ctx: &Ctx) -> Result<Outcome, Error> {
    match cmd {
        NumCmd::Iterint { path, poles } => {
            let p = PathPolyline::parse(path)?;
            let poles = parse_complex_list(poles)?;
            let r = iterint(&p, &poles, &IterintOptions::with_tol(ctx.tol))?;
            let text = format!(
                "value {} {:+.15}i\nerror estimate {:.3e}\nconvention {CONVENTION}; Li_n(z) = {LI_CONVENTION_SIGN} * I(0 -> z; 1, 0, ..., 0)",
                r.value.re, r.value.im, r.error
            );
            let data = json!({
                "value": complex_json(r.value),
                "error": r.error,
                "convention": CONVENTION,
                "li_sign": LI_CONVENTION_SIGN,
            });
            Ok(Outcome::new(true, text, data))
        }
        NumCmd::Shuffle { path, left, right } => {
            let p = PathPolyline::parse(path)?;
            let c = numeric_shuffle_check(&p, &parse_complex_list(left)?, &parse_complex_list(right)?, ctx.tol)?;
            Ok(num_check_outcome("shuffle", &c))
        }
        NumCmd::Pathcomp { path1, path2, poles } => {
            let (p1, p2) = (PathPolyline::parse(path1)?, PathPolyline::parse(path2)?);
            let c = numeric_pathcomp_check(&p1, &p2, &parse_complex_list(poles)?, ctx.tol)?;
            Ok(num_check_outcome("path composition", &c))
        }
    }
}

fn command_name(cmd: &Cmd) -> String {
    let dbg = format!("{cmd:?}");
    // "Verify(PropTree(..." → "verify prop-tree"
    let words: Vec<String> = dbg
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .take(2)
        .map(|w| {
            let mut out = String::new();
            for (i, ch) in w.chars().enumerate() {
                if ch.is_uppercase() && i > 0 {
                    out.push('-');
                }
                out.push(ch.to_ascii_lowercase());
            }
            out
        })
        .collect();
    words.join(" ")
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Trees(TreesCmd::Enumerate { root, leaves }) => trees_enumerate(root, leaves, ctx),
        Cmd::Dga(DgaCmd::D2) => Ok(criterion_outcome(suite::d_squared(&ctx.suite()))),
        Cmd::Verify(v) => verify(v, ctx),
        Cmd::Cycle(c) => cycle(c, ctx),
        Cmd::Picom(p) => picom(p),
        Cmd::Num(n) => num(n, ctx),
    }
}

fn render(json_out: bool, command: &str, o: Outcome) -> CommandResult {
    let report = if json_out {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
        m.insert("status".into(), json!(o.status.name()));
        if let Value::Object(data) = o.data {
            m.extend(data);
        }
        serde_json::to_string_pretty(&Value::Object(m)).expect("serializable") + "\n"
    } else {
        o.text + "\n"
    };
    CommandResult { status: o.status, report }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { Status::Usage } else { Status::Pass };
            return CommandResult { status, report: e.render().to_string() };
        }
    };
    let json_out = cli.json;
    let command = command_name(&cli.cmd);
    let fail = |status: Status, msg: String| {
        let data = json!({ "error": msg });
        render(json_out, &command, Outcome { status, text: format!("error: {msg}"), data })
    };
    let tol = match cli.tol.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => t,
        _ => return fail(Status::Usage, format!("--tol expects a positive decimal, got {:?}", cli.tol)),
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => match v.trim().parse() {
                Ok(s) => s,
                Err(_) => return fail(Status::Usage, format!("${SEED_ENV} is not an integer: {v:?}")),
            },
            Err(_) => DEFAULT_SEED,
        },
    };
    if cli.max_n == 0 {
        return fail(Status::Usage, "--max-n must be at least 1".into());
    }
    let ctx = Ctx { seed, max_n: cli.max_n, tol, dot: cli.dot };
    match dispatch(&cli, &ctx) {
        Ok(o) => render(json_out, &command, o),
        Err(e @ (Error::Parse(_) | Error::NonGenericSequence(_) | Error::EmptyLeafList)) => {
            fail(Status::Usage, e.to_string())
        }
        Err(e) => fail(Status::Fail, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> CommandResult {
        run(std::iter::once("motivic-forest").chain(args.split_whitespace()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go("verify shuffle --from 0 --left 3 --right 5 --to 1").exit_code(), 0);
        assert_eq!(go("verify nonsense").exit_code(), 2);
        assert_eq!(go("verify shuffle --from 0 --left x --right 5 --to 1").exit_code(), 2);
        assert_eq!(go("cycle zeta --n 1").exit_code(), 1);
    }

    #[test]
    fn tree_listing() {
        let r = go("trees enumerate --root 0 --leaves 3,5,7 --json");
        let v: Value = serde_json::from_str(&r.report).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["command"], "trees enumerate");
        assert_eq!(v["count"], 2);
        assert!(go("trees enumerate --root 0 --leaves 3,5 --dot").report.starts_with("digraph t0"));
    }

    #[test]
    fn strict_generic_flag() {
        let args = ["motivic-forest", "verify", "bar-closed", "--seq", "0;3,3;1"];
        assert_eq!(run(args).exit_code(), 0);
        let strict = ["motivic-forest", "verify", "bar-closed", "--seq", "0;3,3;1", "--strict-generic"];
        assert_eq!(run(strict).exit_code(), 2);
    }
}
