use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use operad_forge::algebra::{
    roundtrip, verify_algebra, verify_algebra_map, verify_algebra_map_via_pullback, AlgebraStructure, DEFAULT_LIMIT,
};
use operad_forge::colour::parse_profile_list;
use operad_forge::free::FreeOperad;
use operad_forge::json::{
    algebra_from_json, collection_from_json, family_map_from_json, monoid_from_json, operad_from_json, operad_to_json,
};
use operad_forge::operad::{
    ass_truncated, gamma, operad_from_monoid, terminal_operad, verify_operad, FiniteOperad, Operad,
};
use operad_forge::sc::{self, ScElement};
use operad_forge::{parse_tree, Colour, Error, Profile, Report};

#[derive(Parser)]
#[command(name = "operad-forge", version, about = "Coloured operads in finite sets")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a tree.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Operations of the tree operad.
    #[command(subcommand)]
    Sc(ScCommand),
    /// Finite operads given by tables.
    #[command(subcommand)]
    Operad(OperadCommand),
    /// Free operads on collections.
    #[command(subcommand)]
    Free(FreeCommand),
    /// Algebras over finite operads.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Operad to tree-operad algebra and back, with evaluator agreement.
    Roundtrip {
        operad: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        /// Argument tuples tried per tree.
        #[arg(long, default_value_t = 256)]
        max_tuples: usize,
    },
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Print the canonical form and profile of a tree.
    Check {
        tree: Option<String>,
        #[arg(short = 'f', long = "file", conflicts_with = "tree")]
        file: Option<PathBuf>,
        /// Comma-separated colour set.
        #[arg(long, value_delimiter = ',', required = true)]
        colours: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ScCommand {
    /// Full composition; the `--with` trees are substituted at vertices 1, 2, ...
    Compose {
        tree: String,
        #[arg(long = "with", required = true)]
        with: Vec<String>,
        #[command(flatten)]
        colours: ColourArg,
    },
    /// Substitution at a single vertex.
    Circ {
        tree: String,
        #[arg(short = 'i')]
        i: usize,
        inner: String,
        #[command(flatten)]
        colours: ColourArg,
    },
    /// All elements with the given vertex profiles and boundary.
    Enumerate {
        #[arg(long)]
        profiles: String,
        #[arg(long)]
        boundary: String,
        #[command(flatten)]
        colours: ColourArg,
    },
}

#[derive(Args)]
struct ColourArg {
    /// Colour set; defaults to the colours that occur in the input.
    #[arg(long, value_delimiter = ',')]
    colours: Vec<String>,
}

#[derive(Subcommand)]
enum OperadCommand {
    /// Check the operad axioms on the stored support.
    Verify { operad: PathBuf },
    /// Compose `e` with the arguments `a` (use `-` to leave an input open).
    Gamma {
        operad: PathBuf,
        /// Element, written `name` or `name@(c1,...,cn;c)`.
        #[arg(short = 'e')]
        element: String,
        #[arg(short = 'a', value_delimiter = ',', allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// The operad with unary operations a monoid.
    FromMonoid { monoid: PathBuf },
    /// The associative operad up to the given arity.
    Ass {
        #[arg(long)]
        max_arity: usize,
    },
    /// The terminal operad up to the given arity.
    Terminal {
        #[arg(long, value_delimiter = ',', required = true)]
        colours: Vec<String>,
        #[arg(long)]
        max_arity: usize,
    },
}

#[derive(Subcommand)]
enum FreeCommand {
    /// Classes of decorated trees with the given boundary.
    Enumerate {
        collection: PathBuf,
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        max_vertices: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Check that the action is a morphism into the endomorphism operad.
    Verify { algebra: PathBuf },
    /// Check that per-colour maps form a map of algebras.
    MapCheck {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        /// Check membership in the pullback of endomorphism operads instead.
        #[arg(long)]
        via_pullback: bool,
    },
}

/// What a command produced, in both output formats.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn value(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }

    fn report(report: &Report) -> Self {
        Outcome {
            text: report.to_string(),
            json: serde_json::to_value(report).expect("reports serialise"),
            ok: report.is_ok(),
        }
    }

    fn lines(lines: Vec<String>) -> Self {
        Outcome { text: lines.join("\n"), json: json!(lines), ok: true }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn colours(names: &[String]) -> Result<BTreeSet<Colour>, Error> {
    names.iter().map(|c| Colour::new(c.trim())).collect()
}

/// The given colours, or else those occurring in the trees.
fn colour_set(arg: &ColourArg, trees: &[&str]) -> Result<BTreeSet<Colour>, Error> {
    if !arg.colours.is_empty() {
        return colours(&arg.colours);
    }
    let mut out = BTreeSet::new();
    for t in trees {
        out.extend(parse_tree(t)?.colours());
    }
    Ok(out)
}

fn end_limit() -> Result<u128, Error> {
    match std::env::var("OPERAD_FORGE_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("OPERAD_FORGE_LIMIT must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn load_operad(path: &Path) -> Result<FiniteOperad, Error> {
    operad_from_json(&read(path)?)
}

fn load_algebra(path: &Path) -> Result<AlgebraStructure, Error> {
    algebra_from_json(&read(path)?, path.parent())
}

/// Resolves `name` or `name@(profile)`; a bare name must be unique among the
/// components whose output is `output` (any output if `None`).
fn resolve(op: &FiniteOperad, written: &str, output: Option<&Colour>) -> Result<(Profile, usize), Error> {
    if let Some((name, p)) = written.split_once('@') {
        let p: Profile = p.parse()?;
        let e = op.base().index_of(&p, name)?;
        return Ok((p, e));
    }
    let hits: Vec<(Profile, usize)> = op
        .support()
        .into_iter()
        .filter(|p| output.map_or(true, |c| &p.output == c))
        .filter_map(|p| op.base().index_of(&p, written).ok().map(|e| (p, e)))
        .collect();
    match hits.len() {
        1 => Ok(hits.into_iter().next().expect("one hit")),
        0 => Err(Error::UnknownElement { profile: output.map_or("any profile".into(), |c| format!("output {c}")), element: written.into() }),
        _ => Err(Error::Malformed(format!("element {written:?} is ambiguous; write it as {written}@(c1,...,cn;c)"))),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Tree(TreeCommand::Check { tree, file, colours: names }) => {
            let text = match (tree, file) {
                (Some(t), None) => t.clone(),
                (None, Some(f)) => read(f)?.trim().to_string(),
                _ => return Err(Error::Malformed("give a tree or -f <file>".into())),
            };
            let t = parse_tree(&text)?;
            let report = t.validate(&colours(names)?);
            if !report.is_ok() {
                return Ok(Outcome::report(&report));
            }
            let profile = t.profile()?;
            let vertices: Vec<String> = profile.vertices.iter().map(|p| p.to_string()).collect();
            Ok(Outcome::value(
                format!("{t}\nvertices: {}\nboundary: {}", vertices.join(" "), profile.boundary),
                json!({ "tree": t.to_string(), "vertices": vertices, "boundary": profile.boundary.to_string() }),
            ))
        }
        Command::Sc(ScCommand::Compose { tree, with, colours: arg }) => {
            let mut all: Vec<&str> = vec![tree];
            all.extend(with.iter().map(String::as_str));
            let cs = colour_set(arg, &all)?;
            let x = ScElement::parse(tree, &cs)?;
            let args = with.iter().map(|t| ScElement::parse(t, &cs)).collect::<Result<Vec<_>, _>>()?;
            let out = sc::compose(&x, &args)?;
            Ok(element_outcome(&out))
        }
        Command::Sc(ScCommand::Circ { tree, i, inner, colours: arg }) => {
            let cs = colour_set(arg, &[tree, inner])?;
            let out = sc::circ(&ScElement::parse(tree, &cs)?, *i, &ScElement::parse(inner, &cs)?)?;
            Ok(element_outcome(&out))
        }
        Command::Sc(ScCommand::Enumerate { profiles, boundary, colours: arg }) => {
            let vertex_profiles = parse_profile_list(profiles)?;
            let boundary: Profile = boundary.parse()?;
            let cs = if arg.colours.is_empty() {
                vertex_profiles
                    .iter()
                    .chain([&boundary])
                    .flat_map(|p| p.inputs.iter().chain([&p.output]).cloned())
                    .collect()
            } else {
                colours(&arg.colours)?
            };
            let found = sc::component(&cs, &vertex_profiles, &boundary);
            Ok(Outcome::lines(found.iter().map(|x| x.to_string()).collect()))
        }
        Command::Operad(OperadCommand::Verify { operad }) => Ok(Outcome::report(&verify_operad(&load_operad(operad)?)?)),
        Command::Operad(OperadCommand::Gamma { operad, element, args }) => {
            let op = load_operad(operad)?;
            let (p, e) = resolve(&op, element, None)?;
            if args.len() != p.arity() {
                return Err(Error::ArityMismatch { expected: p.arity(), found: args.len() });
            }
            let mut resolved = Vec::with_capacity(args.len());
            for (c, a) in p.inputs.iter().zip(args) {
                if a == "-" {
                    let id = Profile::identity(c.clone());
                    let u = op.unit(c).ok_or_else(|| Error::OutsideSupport(id.to_string()))?;
                    resolved.push((id, u));
                } else {
                    resolved.push(resolve(&op, a, Some(c))?);
                }
            }
            let (q, z) = gamma(&op, &p, &e, &resolved)?;
            let name = op.name(&q, z);
            Ok(Outcome::value(format!("{name} in {q}"), json!({ "element": name, "profile": q.to_string() })))
        }
        Command::Operad(OperadCommand::FromMonoid { monoid }) => operad_outcome(&operad_from_monoid(&monoid_from_json(&read(monoid)?)?)?),
        Command::Operad(OperadCommand::Ass { max_arity }) => operad_outcome(&ass_truncated(*max_arity)),
        Command::Operad(OperadCommand::Terminal { colours: names, max_arity }) => {
            let cs: Vec<Colour> = colours(names)?.into_iter().collect();
            operad_outcome(&terminal_operad(&cs, *max_arity))
        }
        Command::Free(FreeCommand::Enumerate { collection, boundary, max_vertices }) => {
            let k = collection_from_json(&read(collection)?)?;
            let free = FreeOperad::new(k, *max_vertices)?;
            let classes = free.elements(&boundary.parse()?);
            Ok(Outcome::lines(classes.iter().map(|x| x.to_string()).collect()))
        }
        Command::Algebra(AlgebraCommand::Verify { algebra }) => Ok(Outcome::report(&verify_algebra(&load_algebra(algebra)?))),
        Command::Algebra(AlgebraCommand::MapCheck { source, target, map, via_pullback }) => {
            let a = load_algebra(source)?;
            let b = load_algebra(target)?;
            let f = family_map_from_json(&read(map)?, a.family(), b.family())?;
            let report = if *via_pullback {
                verify_algebra_map_via_pullback(&a, &b, &f, end_limit()?)?
            } else {
                verify_algebra_map(&a, &b, &f)
            };
            Ok(Outcome::report(&report))
        }
        Command::Roundtrip { operad, max_vertices, max_tuples } => {
            let rt = roundtrip(&load_operad(operad)?, *max_vertices, *max_tuples)?;
            let ok = rt.identical && rt.verification.is_ok() && rt.agreement.is_ok();
            let text = format!(
                "tables identical: {}\nextracted operad: {}\nevaluator agreement on {} trees: {}",
                if rt.identical { "yes" } else { "no" },
                rt.verification.to_string().replace('\n', "\n  "),
                rt.trees,
                rt.agreement.to_string().replace('\n', "\n  "),
            );
            let json = json!({
                "identical": rt.identical,
                "verification": rt.verification,
                "trees": rt.trees,
                "agreement": rt.agreement,
            });
            Ok(Outcome { text, json, ok })
        }
    }
}

fn element_outcome(x: &ScElement) -> Outcome {
    let profile = x.profile();
    let vertices: Vec<String> = profile.inputs.iter().map(|p| p.to_string()).collect();
    Outcome::value(
        x.to_string(),
        json!({ "tree": x.to_string(), "vertices": vertices, "boundary": profile.output.to_string() }),
    )
}

fn operad_outcome(op: &FiniteOperad) -> Result<Outcome, Error> {
    let text = operad_to_json(op)?;
    let json = serde_json::from_str(&text)?;
    Ok(Outcome::value(text, json))
}

/// Writes one block to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(&out.text),
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("values serialise")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => emit(&json!({ "error": e.to_string() }).to_string()),
            }
            ExitCode::from(2)
        }
    }
}
