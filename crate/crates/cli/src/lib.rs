//! Command-line front end. Every subcommand calls exactly one library
//! operation and prints one JSON document.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spectral_core::json::{morphism_from_json, parse, render, set_from_json};
use spectral_core::{
    ball, brute_force_distance, classify_ideal, cokernel, compose, decompose, distance, hom_dim,
    hom_to_injective, is_flat, is_interleaved, kernel, rank_invariant, realize, reduce_generators,
    shift_interval, shift_point, Barcode, ChainModule, ClosureStrategy, DPoint, Eps, Error,
    FpInterval, FpModule, Generator, IdealType, IndexModel, Json, Rational, Result, ScalarField,
    SerreRegion, Spectrum,
};

#[derive(Parser, Debug)]
#[command(name = "spectral", version, about = "Exact computations with interval modules over ordered sets")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Scalar field: `rat` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rat")]
    pub field: String,
    /// Index model: `dense`, `chain:<L>` or `dense-surd`.
    #[arg(long, global = true, default_value = "dense")]
    pub model: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    DoubleOrth,
    Supinf,
    Order,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetOp {
    Union,
    Intersect,
    Complement,
    Member,
}

/// Every value argument accepts inline JSON, `@path` for a file, or `-`
/// for standard input. Intervals also accept the shorthand `"[a,b)"`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim Hom(k_[a,b), k_I) for an injective indecomposable.
    Hom {
        #[arg(long)]
        interval: String,
        #[arg(long)]
        ideal: String,
    },
    /// dim Hom between two interval modules.
    HomFp {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// f ∘ g.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Kernel {
        #[arg(long)]
        morphism: String,
    },
    Cokernel {
        #[arg(long)]
        morphism: String,
    },
    /// Indices of a minimal generating subset.
    ReduceGens {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        gens: String,
    },
    IsFlat {
        #[arg(long)]
        module: String,
    },
    Decompose {
        #[arg(long)]
        module: String,
    },
    Realize {
        #[arg(long)]
        barcode: String,
        #[arg(long)]
        length: usize,
    },
    /// Rank of the structure map from i to j.
    Rank {
        #[arg(long)]
        module: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    Classify {
        #[arg(long)]
        ideal: String,
    },
    Closure {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::All)]
        strategy: StrategyArg,
    },
    IsClosed {
        #[arg(long)]
        set: String,
    },
    /// Left orthogonal of a set, or right orthogonal of a region.
    Orthogonal {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        input: String,
    },
    Separate {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    Set {
        #[arg(long, value_enum)]
        op: SetOp,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Shift an interval or an ideal down by eps.
    Shift {
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        interval: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        eps: String,
    },
    Interleaved {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        eps: String,
    },
    Distance {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    Ball {
        #[arg(long)]
        p: String,
        #[arg(long)]
        eps: String,
    },
    /// Bracket the distance by scanning eps on a grid.
    DistanceOracle {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "1/64")]
        step: String,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn parse_field(s: &str) -> Result<ScalarField> {
    match s {
        "rat" => Ok(ScalarField::ExactRationals),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Error::malformed(format!("field must be rat or fp:<p>, got {s:?}")))?;
            ScalarField::prime(p)
        }
    }
}

pub fn parse_model(s: &str) -> Result<IndexModel> {
    match s {
        "dense" => Ok(IndexModel::dense()),
        "dense-surd" => Ok(IndexModel::dense_surd()),
        _ => {
            let l = s
                .strip_prefix("chain:")
                .and_then(|l| l.parse::<u32>().ok())
                .ok_or_else(|| {
                    Error::malformed(format!("model must be dense, chain:<L> or dense-surd, got {s:?}"))
                })?;
            IndexModel::chain(l)
        }
    }
}

/// Inline JSON, `@file`, or `-` for stdin. A bare word that is not JSON is
/// taken as a string, so `--interval '[0,1)'` and `--eps 1/2` work unquoted.
fn load(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::malformed(format!("reading stdin: {e}")))?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::malformed(format!("reading {path}: {e}")))?
    } else {
        arg.to_string()
    };
    match parse(&text) {
        Ok(v) => Ok(v),
        Err(_) if !text.trim_start().starts_with(['{', '"']) => Ok(Value::String(text.trim().to_string())),
        Err(e) => Err(e),
    }
}

fn point(model: &IndexModel, arg: &str) -> Result<DPoint> {
    let p = DPoint::from_json(&load(arg)?)?;
    model.validate_point(&p)?;
    Ok(p)
}

fn interval(arg: &str) -> Result<FpInterval> {
    FpInterval::from_json(&load(arg)?)
}

fn rational(arg: &str) -> Result<Rational> {
    Rational::from_json(&load(arg)?)
}

fn eps(arg: &str) -> Result<Eps> {
    Eps::new(rational(arg)?)
}

fn strategy(s: StrategyArg) -> Option<ClosureStrategy> {
    match s {
        StrategyArg::DoubleOrth => Some(ClosureStrategy::DoubleOrthogonal),
        StrategyArg::Supinf => Some(ClosureStrategy::SupInfSaturation),
        StrategyArg::Order => Some(ClosureStrategy::OrderTopology),
        StrategyArg::All => None,
    }
}

fn execute(cli: &Cli) -> Result<Value> {
    let field = parse_field(&cli.field)?;
    let model = parse_model(&cli.model)?;
    let spectrum = || Spectrum::new(model.clone());
    let set = |sp: &Spectrum, arg: &str| set_from_json(&load(arg)?, sp);
    let chain = |arg: &str| ChainModule::from_json(&load(arg)?)?.reduced(&field);
    let morphism = |arg: &str| morphism_from_json(&load(arg)?, field);

    Ok(match &cli.command {
        Command::Hom { interval: x, ideal } => {
            let x = interval(x)?;
            for c in std::iter::once(x.start().clone()).chain(x.end().finite().cloned()) {
                model.check_member(&c)?;
            }
            json!({"dim": hom_to_injective(&x, &point(&model, ideal)?)})
        }
        Command::HomFp { source, target } => {
            json!({"dim": hom_dim(&interval(source)?, &interval(target)?)})
        }
        Command::Compose { f, g } => compose(&morphism(f)?, &morphism(g)?)?.to_json(),
        Command::Kernel { morphism: f } => {
            let (k, iota) = kernel(&morphism(f)?)?;
            json!({"module": k.to_json(), "map": iota.to_json()})
        }
        Command::Cokernel { morphism: f } => {
            let (c, pi) = cokernel(&morphism(f)?)?;
            json!({"module": c.to_json(), "map": pi.to_json()})
        }
        Command::ReduceGens { ambient, gens } => {
            let ambient = FpModule::from_json(&load(ambient)?)?;
            let raw = load(gens)?;
            let gens: Vec<Generator> = raw
                .as_array()
                .ok_or_else(|| Error::malformed("gens must be an array"))?
                .iter()
                .map(Generator::from_json)
                .collect::<Result<_>>()?;
            json!({"kept": reduce_generators(&field, &ambient, &gens)?})
        }
        Command::IsFlat { module } => json!({"flat": is_flat(&field, &chain(module)?)?}),
        Command::Decompose { module } => decompose(&field, &chain(module)?)?.to_json(),
        Command::Realize { barcode, length } => {
            realize(&Barcode::from_json(&load(barcode)?)?, *length)?.to_json()
        }
        Command::Rank { module, i, j } => {
            json!({"rank": rank_invariant(&field, &chain(module)?, *i, *j)?})
        }
        Command::Classify { ideal } => {
            let t = match classify_ideal(&model, &point(&model, ideal)?)? {
                IdealType::Type1 => 1,
                IdealType::Type2 => 2,
                IdealType::Type3 => 3,
            };
            json!({"type": t})
        }
        Command::Closure { set: s, strategy: st } => {
            let sp = spectrum()?;
            let u = set(&sp, s)?;
            let cl = match strategy(*st) {
                Some(st) => sp.closure(&u, st),
                None => sp.closure_checked(&u)?,
            };
            json!({"closed": cl == u, "set": cl.to_json()})
        }
        Command::IsClosed { set: s } => {
            let sp = spectrum()?;
            json!({"closed": sp.is_closed(&set(&sp, s)?)})
        }
        Command::Orthogonal { direction, input } => {
            let sp = spectrum()?;
            match direction {
                Direction::Left => sp.left_orthogonal(&set(&sp, input)?).to_json(),
                Direction::Right => sp
                    .right_orthogonal(&SerreRegion::from_json(&load(input)?)?)?
                    .to_json(),
            }
        }
        Command::Separate { p, q } => {
            let sp = spectrum()?;
            let (u, v) = sp.separate(&point(&model, p)?, &point(&model, q)?)?;
            json!({"u": u.to_json(), "v": v.to_json()})
        }
        Command::Set { op, a, b, point: pt } => {
            let sp = spectrum()?;
            let a = set(&sp, a)?;
            let other = || -> Result<_> {
                let b = b.as_deref().ok_or_else(|| Error::malformed("this operation needs --b"))?;
                set(&sp, b)
            };
            match op {
                SetOp::Union => sp.union(&a, &other()?).to_json(),
                SetOp::Intersect => sp.intersect(&a, &other()?).to_json(),
                SetOp::Complement => sp.complement(&a).to_json(),
                SetOp::Member => {
                    let pt = pt.as_deref().ok_or_else(|| Error::malformed("member needs --point"))?;
                    json!({"member": sp.member(&a, &point(&model, pt)?)?})
                }
            }
        }
        Command::Shift { interval: x, ideal, eps: e } => {
            let e = eps(e)?;
            match (x, ideal) {
                (Some(x), _) => shift_interval(&interval(x)?, &e).to_json(),
                (None, Some(p)) => shift_point(&point(&model, p)?, &e).to_json(),
                (None, None) => return Err(Error::malformed("shift needs --interval or --ideal")),
            }
        }
        Command::Interleaved { p, q, eps: e } => {
            json!({"interleaved": is_interleaved(&point(&model, p)?, &point(&model, q)?, &eps(e)?)})
        }
        Command::Distance { p, q } => distance(&point(&model, p)?, &point(&model, q)?)?.to_json(),
        Command::Ball { p, eps: e } => ball(&model, &point(&model, p)?, &eps(e)?)?.to_json(),
        Command::DistanceOracle { p, q, step } => {
            brute_force_distance(&point(&model, p)?, &point(&model, q)?, &rational(step)?)?.to_json()
        }
    })
}

fn text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}: {}", render(x)))
            .collect::<Vec<_>>()
            .join("\n"),
        other => render(other),
    }
}

/// Runs a parsed invocation: exit 0 on success, 1 on domain (or internal)
/// errors, 2 on malformed input.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Json => render(&v),
                Format::Text => text(&v),
            },
        },
        Err(e) => Outcome {
            code: if matches!(e, Error::Malformed(_)) { 2 } else { 1 },
            stdout: render(&json!({"error": {"kind": e.kind(), "detail": e.detail()}})),
        },
    }
}
