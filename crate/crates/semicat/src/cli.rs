//! The `semicat` command line.
//!
//! Exit codes: 0 when the property holds or the construction succeeds, 1 when
//! the property fails or nothing is found, 2 for usage and input errors.
//! Every verdict carries evidence: a witness on success, a counterexample on
//! failure.

use crate::io::{self, Document, IoError};
use crate::par;
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use semicat_core::coident::coidentifier;
use semicat_core::completion::{complete_semifunctor, idempotent_completion, DEFAULT_COMPLETION_CAP};
use semicat_core::gallery::{self, GalleryConfig};
use semicat_core::morphprop::{
    cc_semi_isomorphism, cc_semisplit_epi_witness, cc_semisplit_mono_witness, fc_semi_epi_failure,
    fc_semi_mono_failure, fc_semisplit_epi_witness, fc_semisplit_mono_witness, MorphError,
};
use semicat_core::props::{faithfulness_failure, fullness_failure, semifull_witness, PCell, PMode, PSearch, Property};
use semicat_core::semiadj::{
    compose_semiadjunctions, induced_p, promote_left_semiadjoint, promote_right_semiadjoint, rafael_search,
    Semiadjunction, Side,
};
use semicat_core::semifunctor::enumerate_semifunctors;
use semicat_core::transform::{inverse_search, InverseKind, Transformation};
use semicat_core::{FinCategory, IdemNatTransf, Mor, Obj, Semifunctor};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Parser)]
#[command(name = "semicat", version, about = "Checks and constructions for finite categories and semifunctors")]
pub struct Cli {
    /// Print a machine-readable verdict on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the searches; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Largest idempotent completion (in morphisms) that will be built.
    #[arg(long, global = true, default_value_t = DEFAULT_COMPLETION_CAP)]
    completion_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate any document (`-` for stdin).
    Validate { path: String },
    /// Decide a property of a semifunctor (-F), a transformation (-T), or a
    /// morphism between semifunctor images (`check morphism --pred`).
    Check {
        /// functor, faithful, full, semifull, sff, separable, naturally-semifull, semiseparable (-F);
        /// semi-iso, semisplit-mono, semisplit-epi, split-mono, split-epi (-T); morphism
        property: String,
        #[arg(short = 'F')]
        functor: Option<String>,
        /// F' for a morphism FC → F'C' (default: F).
        #[arg(short = 'G')]
        functor2: Option<String>,
        #[arg(short = 'T', conflicts_with_all = ["functor", "functor2"])]
        transformation: Option<String>,
        /// Morphism of the common target category.
        #[arg(long = "mor")]
        morphism: Option<String>,
        /// C, for a morphism out of FC.
        #[arg(long)]
        from: Option<String>,
        /// C', for a morphism into F'C'.
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        pred: Option<Pred>,
    },
    /// Search for a natural P in the given mode.
    SolveP {
        #[arg(short = 'F')]
        functor: String,
        #[arg(long)]
        mode: Mode,
        #[arg(short = 'o')]
        out: Option<String>,
    },
    /// Idempotent completion of a category, or the completed semifunctor.
    Complete {
        #[arg(short = 'C', conflicts_with = "functor", required_unless_present = "functor")]
        category: Option<String>,
        #[arg(short = 'F')]
        functor: Option<String>,
        #[arg(short = 'o')]
        out: Option<String>,
    },
    /// Coidentifier of an idempotent natural transformation.
    Coident {
        /// Must agree with the category of the idempotent, if given.
        #[arg(short = 'C')]
        category: Option<String>,
        #[arg(short = 'E')]
        idempotent: String,
        /// Output directory.
        #[arg(short = 'o')]
        out: Option<String>,
    },
    /// Semiadjunctions.
    Adj {
        #[command(subcommand)]
        command: AdjCommand,
    },
    /// Unit/counit witness for a property of either semiadjoint.
    Rafael {
        #[arg(short = 'A')]
        adjunction: String,
        #[arg(long)]
        side: SideArg,
        #[arg(long)]
        mode: Mode,
    },
    /// The catalogue of worked examples.
    Gallery {
        #[command(subcommand)]
        command: GalleryCommand,
    },
    /// List small structures.
    Enumerate {
        #[command(subcommand)]
        command: EnumerateCommand,
    },
}

#[derive(Debug, Subcommand)]
enum AdjCommand {
    Validate {
        #[arg(short = 'A')]
        adjunction: String,
    },
    /// `F'F ⊣ GG'` from `F ⊣ G` (first -A) and `F' ⊣ G'` (second -A).
    Compose {
        #[arg(short = 'A', required = true, action = ArgAction::Append)]
        adjunctions: Vec<String>,
        #[arg(short = 'o')]
        out: Option<String>,
    },
    /// Repair data satisfying one semitriangular identity.
    Promote {
        #[arg(short = 'A')]
        adjunction: String,
        /// right: data satisfies Gε∘ηG = G Id; left: εF∘Fη = F Id.
        #[arg(long)]
        side: SideArg,
        #[arg(short = 'o')]
        out: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum GalleryCommand {
    List,
    Run {
        name: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_set_size: usize,
    },
}

#[derive(Debug, Subcommand)]
enum EnumerateCommand {
    /// Idempotent natural transformations on the identity.
    Idempotents {
        #[arg(short = 'C')]
        category: String,
    },
    /// Semifunctors between two categories, with their properties.
    Semifunctors {
        #[arg(short = 'C')]
        source: String,
        #[arg(short = 'D')]
        target: String,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    #[value(alias = "sep")]
    Separable,
    #[value(name = "nat-semifull", alias = "naturally-semifull")]
    NatSemifull,
    #[value(name = "semisep", alias = "semiseparable")]
    Semisep,
}

impl From<Mode> for PMode {
    fn from(m: Mode) -> PMode {
        match m {
            Mode::Separable => PMode::Separable,
            Mode::NatSemifull => PMode::NaturallySemifull,
            Mode::Semisep => PMode::Semiseparable,
        }
    }
}

/// Morphism predicates. With only `--from` (resp. `--to`) they are taken
/// relative to one image object; with both, relative to the pair.
#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pred {
    SemiMono,
    SemiEpi,
    SemisplitMono,
    SemisplitEpi,
    SemiIso,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Input(String),
    #[error("cannot write `{0}`: {1}")]
    Write(String, std::io::Error),
}

type Exit = Result<i32, CliError>;

struct Ctx<'a> {
    json: bool,
    threads: usize,
    cap: usize,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }
    fn value(&mut self, v: &Value) {
        let _ = write!(self.out, "{}", io::render_value(v));
    }
    /// Writes a document to `path`, or to stdout.
    fn emit(&mut self, doc: &Document, path: Option<&str>) -> Result<(), CliError> {
        match path {
            None | Some("-") => {
                let _ = write!(self.out, "{}", io::render(doc));
                Ok(())
            }
            Some(p) => write_file(Path::new(p), &io::render(doc)),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Write(path.display().to_string(), e))
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, threads: cli.threads.max(1), cap: cli.completion_cap, out: stdout };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Exit {
    match cmd {
        Command::Validate { path } => validate(ctx, &path),
        Command::Check { property, functor, functor2, transformation, morphism, from, to, pred } => {
            match (property.as_str(), transformation) {
                ("morphism", None) => {
                    let pred = pred.ok_or_else(|| CliError::Input("check morphism needs --pred".into()))?;
                    let functor = functor.ok_or_else(|| CliError::Input("check morphism needs -F".into()))?;
                    let morphism = morphism.ok_or_else(|| CliError::Input("check morphism needs --mor".into()))?;
                    let spec = MorphismCheck { functor, functor2, morphism, from, to, pred };
                    check_morphism(ctx, &spec)
                }
                (_, Some(t)) => check_transformation(ctx, &property, &t),
                (_, None) => {
                    let functor = functor.ok_or_else(|| CliError::Input("check needs -F or -T".into()))?;
                    check(ctx, &property, &functor)
                }
            }
        }
        Command::SolveP { functor, mode, out } => solve(ctx, &functor, mode.into(), out.as_deref()),
        Command::Complete { category, functor, out } => complete(ctx, category, functor, out.as_deref()),
        Command::Coident { category, idempotent, out } => {
            coident(ctx, category.as_deref(), &idempotent, out.as_deref())
        }
        Command::Adj { command } => adj(ctx, command),
        Command::Rafael { adjunction, side, mode } => rafael(ctx, &adjunction, side.into(), mode.into()),
        Command::Gallery { command } => gallery_cmd(ctx, command),
        Command::Enumerate { command } => enumerate(ctx, command),
    }
}

fn read_category(path: &str) -> Result<Arc<FinCategory>, CliError> {
    match io::read_document(path)? {
        Document::Category(c) => Ok(c),
        d => Err(CliError::Input(format!("`{path}`: expected a category, found {}", d.kind()))),
    }
}

fn read_semifunctor(path: &str) -> Result<Semifunctor, CliError> {
    match io::read_document(path)? {
        Document::Semifunctor(f) => Ok(f),
        d => Err(CliError::Input(format!("`{path}`: expected a semifunctor, found {}", d.kind()))),
    }
}

fn read_adjunction(path: &str) -> Result<Semiadjunction, CliError> {
    match io::read_document(path)? {
        Document::Semiadjunction(a) => Ok(a),
        d => Err(CliError::Input(format!("`{path}`: expected a semiadjunction, found {}", d.kind()))),
    }
}

fn read_transformation(path: &str) -> Result<Transformation, CliError> {
    match io::read_document(path)? {
        Document::Transformation(t) => Ok(t),
        d => Err(CliError::Input(format!("`{path}`: expected a transformation, found {}", d.kind()))),
    }
}

fn read_idempotent(path: &str) -> Result<IdemNatTransf, CliError> {
    match io::read_document(path)? {
        Document::IdemNat(e) => Ok(e),
        d => Err(CliError::Input(format!("`{path}`: expected an idem-nat, found {}", d.kind()))),
    }
}

fn validate(ctx: &mut Ctx, path: &str) -> Exit {
    let doc = io::read_document(path)?;
    let summary = match &doc {
        Document::Category(c) => format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
        Document::Semifunctor(f) => format!("{} → {} objects", f.source().num_objects(), f.target().num_objects()),
        Document::Transformation(t) => {
            format!("natural: {}, seminatural: {}", t.is_natural(), t.is_seminatural())
        }
        Document::Semiadjunction(a) => {
            format!("{} ⊣ {} objects", a.left().source().num_objects(), a.left().target().num_objects())
        }
        Document::IdemNat(e) => format!("identity: {}", e.is_identity()),
        Document::PSolution(p) => format!("mode {}", p.mode().name()),
    };
    if ctx.json {
        ctx.value(&json!({"command": "validate", "kind": doc.kind(), "valid": true, "summary": summary}));
    } else {
        ctx.line(format!("valid {}: {summary}", doc.kind()));
    }
    Ok(0)
}

fn cell_value(f: &Semifunctor, cell: PCell) -> Value {
    let (c, d) = (f.source(), f.target());
    json!({"x": c.obj_name(cell.x), "y": c.obj_name(cell.y), "d": d.mor_name(cell.d)})
}

fn cell_text(f: &Semifunctor, cell: PCell) -> String {
    let (c, d) = (f.source(), f.target());
    format!("{}: F{} → F{}", d.mor_name(cell.d), c.obj_name(cell.x), c.obj_name(cell.y))
}

/// Verdict for `property`: `(holds, witness, counterexample, human note)`.
fn evidence(f: &Semifunctor, p: Property, threads: usize) -> (bool, Value, Value, String) {
    let (c, d) = (f.source(), f.target());
    let faithful_cx = || {
        faithfulness_failure(f).map(|(g, h)| {
            let v = json!({"f": c.mor_name(g), "g": c.mor_name(h), "image": d.mor_name(f.mor(g))});
            (v, format!("F({}) = F({}) = {}", c.mor_name(g), c.mor_name(h), d.mor_name(f.mor(g))))
        })
    };
    let semifull = || match semifull_witness(f) {
        Ok(w) => Ok(Value::Array(
            w.iter()
                .map(|&(cell, g)| {
                    let mut v = cell_value(f, cell);
                    v["preimage"] = json!(c.mor_name(g));
                    v
                })
                .collect(),
        )),
        Err(cell) => Err((cell_value(f, cell), format!("no g with Fg = FId∘d∘FId for {}", cell_text(f, cell)))),
    };
    match p {
        Property::Functor => match c.objects().find(|&x| !d.is_identity(f.image_identity(x))) {
            None => (true, json!({"image_identities": "all identities"}), Value::Null, String::new()),
            Some(x) => {
                let m = d.mor_name(f.image_identity(x));
                (
                    false,
                    Value::Null,
                    json!({"object": c.obj_name(x), "image_identity": m}),
                    format!("F(Id_{}) = {m}", c.obj_name(x)),
                )
            }
        },
        Property::Faithful => match faithful_cx() {
            None => (true, io::semifunctor_value(f)["morphism_map"].clone(), Value::Null, String::new()),
            Some((v, s)) => (false, Value::Null, v, s),
        },
        Property::Full => match fullness_failure(f) {
            None => (true, semifull().unwrap_or(Value::Null), Value::Null, String::new()),
            Some(cell) => (false, Value::Null, cell_value(f, cell), format!("{} has no preimage", cell_text(f, cell))),
        },
        Property::Semifull => match semifull() {
            Ok(w) => (true, w, Value::Null, String::new()),
            Err((v, s)) => (false, Value::Null, v, s),
        },
        Property::SemifullyFaithful => match (faithful_cx(), semifull()) {
            (None, Ok(w)) => (true, json!({"semifull": w}), Value::Null, String::new()),
            (Some((v, s)), _) => (false, Value::Null, json!({"faithful": v}), s),
            (None, Err((v, s))) => (false, Value::Null, json!({"semifull": v}), s),
        },
        Property::Separable | Property::NaturallySemifull | Property::Semiseparable => {
            let mode = match p {
                Property::Separable => PMode::Separable,
                Property::NaturallySemifull => PMode::NaturallySemifull,
                _ => PMode::Semiseparable,
            };
            match search_p(f, mode, threads) {
                Some(sol) => (true, io::p_solution_value(&sol), Value::Null, String::new()),
                None => {
                    let necessary = match mode {
                        PMode::Separable => faithful_cx().map(|(v, s)| (json!({"faithful": v}), s)),
                        PMode::NaturallySemifull => semifull().err().map(|(v, s)| (json!({"semifull": v}), s)),
                        PMode::Semiseparable => None,
                    };
                    let exhausted =
                        || (json!({"search": "exhausted"}), "no natural P exists (exhaustive search)".to_string());
                    let (v, s) = necessary.unwrap_or_else(exhausted);
                    (false, Value::Null, v, s)
                }
            }
        }
    }
}

fn search_p(f: &Semifunctor, mode: PMode, threads: usize) -> Option<semicat_core::props::PSolution> {
    let search = PSearch::new(f, mode);
    par::first_branch(search.root_branches(), threads, |i| search.first_in_branch(i))
}

fn check(ctx: &mut Ctx, property: &str, functor: &str) -> Exit {
    let p = Property::parse(property).ok_or_else(|| {
        let names: Vec<_> = Property::ALL.iter().map(|p| p.name()).collect();
        CliError::Input(format!("unknown property `{property}` (expected one of {})", names.join(", ")))
    })?;
    let f = read_semifunctor(functor)?;
    let (holds, witness, counterexample, note) = evidence(&f, p, ctx.threads);
    report(ctx, p.name(), holds, witness, counterexample, &note)
}

fn report(ctx: &mut Ctx, property: &str, holds: bool, witness: Value, counterexample: Value, note: &str) -> Exit {
    if ctx.json {
        ctx.value(&json!({
            "command": "check", "property": property, "verdict": holds,
            "witness": witness, "counterexample": counterexample,
        }));
    } else if holds {
        ctx.line(format!("{property}: true"));
    } else {
        ctx.line(format!("{property}: false ({note})"));
    }
    Ok(if holds { 0 } else { 1 })
}

fn check_transformation(ctx: &mut Ctx, property: &str, path: &str) -> Exit {
    const KINDS: [(&str, InverseKind); 5] = [
        ("semi-iso", InverseKind::SemiIso),
        ("semisplit-mono", InverseKind::SemisplitMono),
        ("semisplit-epi", InverseKind::SemisplitEpi),
        ("split-mono", InverseKind::SplitMono),
        ("split-epi", InverseKind::SplitEpi),
    ];
    let kind = KINDS.iter().find(|(n, _)| *n == property).map(|&(_, k)| k).ok_or_else(|| {
        let names: Vec<_> = KINDS.iter().map(|(n, _)| *n).collect();
        CliError::Input(format!("unknown transformation property `{property}` (expected one of {})", names.join(", ")))
    })?;
    let alpha = read_transformation(path)?;
    let name = format!("natural {property}");
    if !alpha.is_seminatural() {
        return report(ctx, &name, false, Value::Null, json!({"seminatural": false}), "α is not seminatural");
    }
    let search = inverse_search(&alpha, kind).map_err(|e| CliError::Input(e.to_string()))?;
    let found = par::first_branch(search.root_branches(), ctx.threads, |i| search.first_in_branch(i));
    match found {
        Some(beta) => report(ctx, &name, true, io::transformation_value(&beta), Value::Null, ""),
        None => {
            // the one-sided searches say which half of a semi-isomorphism is missing
            let missing: Vec<&str> = match kind {
                InverseKind::SemiIso => {
                    [("semisplit-mono", InverseKind::SemisplitMono), ("semisplit-epi", InverseKind::SemisplitEpi)]
                        .into_iter()
                        .filter(|&(_, k)| inverse_search(&alpha, k).map_or(true, |s| s.first().is_none()))
                        .map(|(n, _)| n)
                        .collect()
                }
                _ => vec![property],
            };
            let note = format!("no seminatural witness for {}", missing.join(", "));
            report(ctx, &name, false, Value::Null, json!({"search": "exhausted", "missing": missing}), &note)
        }
    }
}

struct MorphismCheck {
    functor: String,
    functor2: Option<String>,
    morphism: String,
    from: Option<String>,
    to: Option<String>,
    pred: Pred,
}

fn check_morphism(ctx: &mut Ctx, spec: &MorphismCheck) -> Exit {
    let f = read_semifunctor(&spec.functor)?;
    let f2 = match &spec.functor2 {
        Some(p) => read_semifunctor(p)?,
        None => f.clone(),
    };
    let d = f.target().clone();
    let m = d.mor(&spec.morphism).ok_or_else(|| CliError::Input(format!("no morphism `{}`", spec.morphism)))?;
    let object = |g: &Semifunctor, name: &Option<String>| -> Result<Option<Obj>, CliError> {
        name.as_deref()
            .map(|n| g.source().obj(n).ok_or_else(|| CliError::Input(format!("no object `{n}` in the source"))))
            .transpose()
    };
    let (from, to) = (object(&f, &spec.from)?, object(&f2, &spec.to)?);
    let morph = |e: MorphError| CliError::Input(e.to_string());
    let pair = |p: Option<(Mor, Mor)>| p.map(|(h, k)| json!({"h": d.mor_name(h), "k": d.mor_name(k)}));
    let named = |key: &str, g: Option<Mor>| g.map(|g| json!({ key: d.mor_name(g) }));
    let (name, witness, counterexample) = match (spec.pred, from, to) {
        (Pred::SemiMono, Some(c), None) => {
            let cx = pair(fc_semi_mono_failure(&f, c, m).map_err(morph)?);
            ("semi-mono", cx.is_none().then(|| json!({"checked": "all parallel pairs into FC"})), cx)
        }
        (Pred::SemiEpi, None, Some(c2)) => {
            let cx = pair(fc_semi_epi_failure(&f2, c2, m).map_err(morph)?);
            ("semi-epi", cx.is_none().then(|| json!({"checked": "all parallel pairs out of F'C'"})), cx)
        }
        (Pred::SemisplitMono, Some(c), None) => {
            ("semisplit-mono", named("retraction", fc_semisplit_mono_witness(&f, c, m).map_err(morph)?), None)
        }
        (Pred::SemisplitEpi, None, Some(c2)) => {
            ("semisplit-epi", named("section", fc_semisplit_epi_witness(&f2, c2, m).map_err(morph)?), None)
        }
        (Pred::SemisplitMono, Some(c), Some(c2)) => {
            ("semisplit-mono", named("retraction", cc_semisplit_mono_witness(&f, c, &f2, c2, m).map_err(morph)?), None)
        }
        (Pred::SemisplitEpi, Some(c), Some(c2)) => {
            ("semisplit-epi", named("section", cc_semisplit_epi_witness(&f, c, &f2, c2, m).map_err(morph)?), None)
        }
        (Pred::SemiIso, Some(c), Some(c2)) => {
            let inv = named("semi_inverse", cc_semi_isomorphism(&f, c, &f2, c2, m).map_err(morph)?);
            let cx = inv.is_none().then(|| {
                let mono = cc_semisplit_mono_witness(&f, c, &f2, c2, m).ok().flatten().is_some();
                let epi = cc_semisplit_epi_witness(&f, c, &f2, c2, m).ok().flatten().is_some();
                json!({"semisplit_mono": mono, "semisplit_epi": epi})
            });
            ("semi-iso", inv, cx)
        }
        (Pred::SemiMono | Pred::SemisplitMono, None, _) => return Err(CliError::Input("--pred needs --from".into())),
        (Pred::SemiEpi | Pred::SemisplitEpi, _, None) => return Err(CliError::Input("--pred needs --to".into())),
        (Pred::SemiMono, _, Some(_)) | (Pred::SemiEpi, Some(_), _) => {
            return Err(CliError::Input("semi-mono takes only --from, semi-epi only --to".into()))
        }
        (Pred::SemiIso, _, _) => return Err(CliError::Input("semi-iso needs --from and --to".into())),
    };
    let holds = witness.is_some();
    let counterexample = if holds { Value::Null } else { counterexample.unwrap_or(json!({"search": "exhausted"})) };
    let note = if counterexample.get("h").is_some() {
        format!(
            "h = {}, k = {}",
            counterexample["h"].as_str().unwrap_or(""),
            counterexample["k"].as_str().unwrap_or("")
        )
    } else {
        "no witness exists".to_string()
    };
    report(ctx, name, holds, witness.unwrap_or(Value::Null), counterexample, &note)
}

fn solve(ctx: &mut Ctx, functor: &str, mode: PMode, out: Option<&str>) -> Exit {
    let f = read_semifunctor(functor)?;
    match search_p(&f, mode, ctx.threads) {
        Some(sol) => {
            let doc = Document::PSolution(sol);
            if ctx.json {
                ctx.value(
                    &json!({"command": "solve-p", "mode": mode.name(), "verdict": true, "witness": doc.to_value()}),
                );
                if let Some(path) = out {
                    write_file(Path::new(path), &io::render(&doc))?;
                }
            } else {
                ctx.emit(&doc, out)?;
            }
            Ok(0)
        }
        None => {
            let p = match mode {
                PMode::Separable => Property::Separable,
                PMode::NaturallySemifull => Property::NaturallySemifull,
                PMode::Semiseparable => Property::Semiseparable,
            };
            let (_, _, counterexample, note) = evidence(&f, p, 1);
            if ctx.json {
                ctx.value(&json!({"command": "solve-p", "mode": mode.name(), "verdict": false, "counterexample": counterexample}));
            } else {
                ctx.line(format!("not found: {note}"));
            }
            Ok(1)
        }
    }
}

fn complete(ctx: &mut Ctx, category: Option<String>, functor: Option<String>, out: Option<&str>) -> Exit {
    let too_big = |e: semicat_core::completion::CompletionError| CliError::Input(e.to_string());
    let doc = match (category, functor) {
        (Some(c), _) => {
            let c = read_category(&c)?;
            Document::Category(idempotent_completion(&c, ctx.cap).map_err(too_big)?.cat().clone())
        }
        (None, Some(f)) => {
            let f = read_semifunctor(&f)?;
            let cs = idempotent_completion(f.source(), ctx.cap).map_err(too_big)?;
            let cd = idempotent_completion(f.target(), ctx.cap).map_err(too_big)?;
            Document::Semifunctor(complete_semifunctor(&f, &cs, &cd).map_err(too_big)?)
        }
        (None, None) => return Err(CliError::Input("one of -C or -F is required".into())),
    };
    ctx.emit(&doc, out)?;
    Ok(0)
}

fn coident(ctx: &mut Ctx, category: Option<&str>, idempotent: &str, out: Option<&str>) -> Exit {
    let e = read_idempotent(idempotent)?;
    if let Some(c) = category {
        if *read_category(c)? != **e.base() {
            return Err(CliError::Input(format!("`{idempotent}` is not an idempotent on `{c}`")));
        }
    }
    let q = coidentifier(&e);
    let docs = [
        ("category", Document::Category(q.cat().clone())),
        ("H", Document::Semifunctor(q.quotient().clone())),
        ("L", Document::Semifunctor(q.section().clone())),
        ("L-H", Document::Semiadjunction(q.semiadjunction())),
    ];
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Write(dir.into(), e))?;
            for (name, doc) in &docs {
                write_file(&Path::new(dir).join(format!("{name}{}", io::EXTENSION)), &io::render(doc))?;
            }
            if ctx.json {
                let files: Vec<_> = docs.iter().map(|(n, _)| format!("{n}{}", io::EXTENSION)).collect();
                ctx.value(&json!({"command": "coident", "morphisms": q.cat().num_morphisms(), "files": files}));
            } else {
                ctx.line(format!("wrote C_e ({} morphisms), H, L and L ⊣ H to {dir}", q.cat().num_morphisms()));
            }
        }
        None => {
            let all: serde_json::Map<_, _> = docs.iter().map(|(n, d)| (n.to_string(), d.to_value())).collect();
            ctx.value(&Value::Object(all));
        }
    }
    Ok(0)
}

fn adj(ctx: &mut Ctx, cmd: AdjCommand) -> Exit {
    match cmd {
        AdjCommand::Validate { adjunction } => {
            let a = read_adjunction(&adjunction)?;
            let (f, g) = (a.left(), a.right());
            if ctx.json {
                ctx.value(&json!({
                    "command": "adj validate", "valid": true,
                    "unit": io::components_value(f.source(), f.source(), a.unit().components()),
                    "counit": io::components_value(f.target(), f.target(), a.counit().components()),
                    "left_is_functor": f.is_functor(), "right_is_functor": g.is_functor(),
                }));
            } else {
                ctx.line("valid semiadjunction: both semitriangular identities hold");
            }
            Ok(0)
        }
        AdjCommand::Compose { adjunctions, out } => {
            if adjunctions.len() != 2 {
                return Err(CliError::Input("adj compose takes exactly two -A files".into()));
            }
            let inner = read_adjunction(&adjunctions[0])?;
            let outer = read_adjunction(&adjunctions[1])?;
            let c = compose_semiadjunctions(&inner, &outer).map_err(|e| CliError::Input(e.to_string()))?;
            ctx.emit(&Document::Semiadjunction(c), out.as_deref())?;
            Ok(0)
        }
        AdjCommand::Promote { adjunction, side, out } => {
            let (f, g, unit, counit) = io::read_semiadjunction_data(&adjunction)?;
            let promoted = match side {
                SideArg::Right => promote_right_semiadjoint(&f, &g, unit, counit),
                SideArg::Left => promote_left_semiadjoint(&f, &g, unit, counit),
            };
            match promoted {
                Ok(a) => {
                    ctx.emit(&Document::Semiadjunction(a), out.as_deref())?;
                    Ok(0)
                }
                Err(e) => {
                    if ctx.json {
                        ctx.value(&json!({"command": "adj promote", "verdict": false, "reason": e.to_string()}));
                    } else {
                        ctx.line(format!("cannot promote: {e}"));
                    }
                    Ok(1)
                }
            }
        }
    }
}

fn rafael(ctx: &mut Ctx, adjunction: &str, side: Side, mode: PMode) -> Exit {
    let a = read_adjunction(adjunction)?;
    let search = rafael_search(&a, side, mode);
    let found = par::first_branch(search.root_branches(), ctx.threads, |i| search.first_in_branch(i));
    let side_name = if side == Side::Left { "left" } else { "right" };
    match found {
        Some(w) => {
            let p = induced_p(&a, side, mode, &w);
            if ctx.json {
                ctx.value(&json!({
                    "command": "rafael", "side": side_name, "mode": mode.name(), "verdict": true,
                    "witness": io::transformation_value(&w), "p": io::p_solution_value(&p),
                }));
            } else {
                let base = w.from().source();
                let target = w.from().target();
                let comps: Vec<_> = base
                    .objects()
                    .map(|x| format!("{}: {}", base.obj_name(x), target.mor_name(w.component(x))))
                    .collect();
                let name = if side == Side::Left { "ν" } else { "γ" };
                ctx.line(format!("{} semiadjoint is {}: {name} = ({})", side_name, mode.name(), comps.join(", ")));
            }
            Ok(0)
        }
        None => {
            if ctx.json {
                ctx.value(&json!({
                    "command": "rafael", "side": side_name, "mode": mode.name(), "verdict": false,
                    "counterexample": {"search": "exhausted"},
                }));
            } else {
                ctx.line(format!("{side_name} semiadjoint is not {}: no witness exists", mode.name()));
            }
            Ok(1)
        }
    }
}

fn gallery_cmd(ctx: &mut Ctx, cmd: GalleryCommand) -> Exit {
    match cmd {
        GalleryCommand::List => {
            let config = GalleryConfig::default();
            let mut rows = Vec::new();
            for name in gallery::NAMES {
                let e = gallery::build(name, &config).map_err(|e| CliError::Input(e.to_string()))?;
                rows.push((name, e.summary, e.expectations.len()));
            }
            if ctx.json {
                let v: Vec<_> =
                    rows.iter().map(|(n, s, k)| json!({"name": n, "summary": s, "expectations": k})).collect();
                ctx.value(&Value::Array(v));
            } else {
                for (n, s, k) in rows {
                    ctx.line(format!("{n:<22} {k:>3}  {s}"));
                }
            }
            Ok(0)
        }
        GalleryCommand::Run { name, max_set_size } => {
            let config = GalleryConfig { max_set_size, completion_cap: ctx.cap };
            let names: Vec<&str> = match &name {
                Some(n) => vec![n.as_str()],
                None => gallery::NAMES.to_vec(),
            };
            let built = par::map(&names, ctx.threads, |n| gallery::build(n, &config));
            let entries =
                built.into_iter().collect::<Result<Vec<_>, _>>().map_err(|e| CliError::Input(e.to_string()))?;
            let outcomes: Vec<_> = par::map(&entries, ctx.threads, gallery::run_entry).into_iter().flatten().collect();
            let failures = outcomes.iter().filter(|o| !o.passed()).count();
            if ctx.json {
                let v: Vec<_> = outcomes
                    .iter()
                    .map(|o| json!({"entry": o.entry, "subject": o.subject, "property": o.property, "expected": o.expected, "actual": o.actual}))
                    .collect();
                ctx.value(&json!({"command": "gallery run", "outcomes": v, "failures": failures}));
            } else {
                for o in &outcomes {
                    let tag = if o.passed() { "PASS" } else { "FAIL" };
                    ctx.line(format!(
                        "{tag} {}: {} {} = {} (expected {})",
                        o.entry, o.subject, o.property, o.actual, o.expected
                    ));
                }
                ctx.line(format!("{} expectations, {failures} failures", outcomes.len()));
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn enumerate(ctx: &mut Ctx, cmd: EnumerateCommand) -> Exit {
    match cmd {
        EnumerateCommand::Idempotents { category } => {
            let c = read_category(&category)?;
            let all = IdemNatTransf::enumerate(&c);
            if ctx.json {
                let v: Vec<_> = all.iter().map(|e| io::components_value(&c, &c, e.components())).collect();
                ctx.value(&Value::Array(v));
            } else {
                for e in &all {
                    let comps: Vec<_> =
                        c.objects().map(|x| format!("{}: {}", c.obj_name(x), c.mor_name(e.component(x)))).collect();
                    ctx.line(format!("({})", comps.join(", ")));
                }
                ctx.line(format!("{} idempotent natural transformations", all.len()));
            }
            Ok(0)
        }
        EnumerateCommand::Semifunctors { source, target, limit } => {
            let (c, d) = (read_category(&source)?, read_category(&target)?);
            let all = enumerate_semifunctors(&c, &d, limit);
            let rows = par::map(&all, ctx.threads, |f| {
                let props: serde_json::Map<_, _> =
                    Property::ALL.iter().map(|p| (p.name().to_string(), json!(p.holds(f)))).collect();
                let v = io::semifunctor_value(f);
                json!({"object_map": v["object_map"], "morphism_map": v["morphism_map"], "properties": props})
            });
            if ctx.json {
                ctx.value(&Value::Array(rows));
            } else {
                for r in &rows {
                    let holds: Vec<_> = r["properties"]
                        .as_object()
                        .unwrap()
                        .iter()
                        .filter(|(_, v)| v == &&json!(true))
                        .map(|(k, _)| k.as_str())
                        .collect();
                    ctx.line(format!("{} [{}]", r["morphism_map"], holds.join(", ")));
                }
                ctx.line(format!("{} semifunctors", rows.len()));
            }
            Ok(0)
        }
    }
}
