//! Verb dispatch. Exit status: 0 for success or a true verdict, 1 for a false
//! verdict, 2 for errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use trop_core::dimension::{reduce_facets, ChainReport};
use trop_core::equivalence::disagreements;
use trop_core::layered::{layered_set_of, LayeredPolynomial};
use trop_core::{
    check_admissible, corner_locus, default_witnesses, dimension, equal_on, intersect, total_locus, verify_chain,
    AlgebraicSet, Error, Layer, LayeredValue, Polynomial, Rational, Scalar, SupertropicalValue, VarietyChain,
};

use crate::json::{algebraic_set, layered_set, point};
use crate::setspec::{layered_poly, poly, read_spec, resolve_arity, Set, SetSpec};
use crate::svg::{render_svg, Drawable, RenderSpec};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Evaluate `-f` at the point `-a`.
    Eval,
    /// Classify the monomials of `-f`.
    Classify,
    /// The essential part of `-f`.
    Shell,
    /// Corner locus of `-f` (total locus with `--total`), or the set `-X`.
    Locus,
    /// Intersection of the sets `-X` and the corner loci of `-f`, `-g`.
    Intersect,
    /// Whether `-f` and `-g` are equal as functions on `-X`.
    Equal,
    /// Admissibility of `-X`.
    Admissible,
    /// Layered algebraic set of `-f` (and `-g`), or the layered set `-X`.
    Layered,
    /// Dimension of `-X`; with several `-X`, verify them as a chain.
    Dim,
    /// Draw the sets `-X` (and `-f`, `-g`) as SVG.
    Render,
}

#[derive(Debug, Parser)]
#[command(name = "trop", version, about = "Supertropical algebraic sets from the command line")]
pub struct Cli {
    pub verb: Verb,
    /// Polynomial text, e.g. `x1 + 1*x2 + 1` or `x^2 + 3v*x + 6`.
    #[arg(short = 'f', allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(short = 'g', allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Point: comma-separated values with optional `v` (ghost) or `@k` (layer).
    #[arg(short = 'a', allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Set spec: inline JSON, a name such as `plane`, or `@file`. Repeatable.
    #[arg(short = 'X')]
    pub x: Vec<String>,
    /// Write an SVG picture to this file instead of printing JSON.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// `auto` or `@file` holding a JSON list of `[f, g]` pairs.
    #[arg(long, default_value = "auto")]
    pub witnesses: String,
    /// Use the total locus instead of the corner locus.
    #[arg(long)]
    pub total: bool,
    /// Highlight the intersection of the first two sets when rendering.
    #[arg(long)]
    pub highlight: bool,
}

/// Command result: JSON for stdout, or an SVG already written.
struct Outcome {
    json: Option<Value>,
    verdict: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json: Some(json), verdict: true }
    }
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(o) => {
            if let Some(v) = o.json {
                let text = serde_json::to_string(&v).expect("JSON values serialize");
                let _ = writeln!(out, "{text}");
            }
            if o.verdict {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Inputs {
    arity: usize,
    specs: Vec<SetSpec>,
}

impl Inputs {
    fn new(cli: &Cli, point_arity: Option<usize>) -> Result<Self, CliError> {
        let specs = cli.x.iter().map(|s| read_spec(s)).collect::<Result<Vec<_>, _>>()?;
        let texts: Vec<&str> = cli.f.iter().chain(cli.g.iter()).map(String::as_str).collect();
        let arity = match point_arity {
            Some(n) => n,
            None => resolve_arity(&specs, &texts)?,
        };
        Ok(Inputs { arity, specs })
    }

    fn sets(&self) -> Result<Vec<Set>, CliError> {
        self.specs.iter().map(|s| s.eval(self.arity)).collect()
    }

    fn poly(&self, text: &Option<String>, flag: &str) -> Result<Polynomial, CliError> {
        let t = text.as_deref().ok_or_else(|| CliError::Usage(format!("missing -{flag}")))?;
        poly(t, self.arity)
    }

    /// The set of `-X`, or the corner locus of `-f`.
    fn one_set(&self, cli: &Cli) -> Result<AlgebraicSet, CliError> {
        match self.specs.first() {
            Some(s) => s.eval(self.arity)?.plain(),
            None => Ok(corner_locus(&self.poly(&cli.f, "f")?)?),
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.verb {
        Verb::Eval => eval(cli),
        Verb::Classify => {
            let inp = Inputs::new(cli, None)?;
            let f = inp.poly(&cli.f, "f")?;
            let classes = f.classify_all()?;
            let rows: Vec<Value> = classes
                .iter()
                .enumerate()
                .map(|(i, c)| json!({ "term": term_text(&f, i), "class": format!("{c:?}") }))
                .collect();
            Ok(Outcome::ok(Value::Array(rows)))
        }
        Verb::Shell => {
            let inp = Inputs::new(cli, None)?;
            let f = inp.poly(&cli.f, "f")?;
            Ok(Outcome::ok(json!(f.shell()?.to_string())))
        }
        Verb::Locus => {
            let inp = Inputs::new(cli, None)?;
            let set = match inp.specs.first() {
                Some(s) => s.eval(inp.arity)?,
                None => {
                    let f = inp.poly(&cli.f, "f")?;
                    Set::Plain(if cli.total { total_locus(&f)? } else { corner_locus(&f)? })
                }
            };
            emit(cli, &[set], None)
        }
        Verb::Intersect => {
            let inp = Inputs::new(cli, None)?;
            let mut sets = inp.sets()?.into_iter().map(Set::plain).collect::<Result<Vec<_>, _>>()?;
            for t in [&cli.f, &cli.g] {
                if t.is_some() {
                    sets.push(corner_locus(&inp.poly(t, "f")?)?);
                }
            }
            if sets.len() < 2 {
                return Err(CliError::Usage("intersect needs at least two sets".into()));
            }
            let mut acc = sets[0].clone();
            for y in &sets[1..] {
                acc = intersect(&acc, y)?;
            }
            emit(cli, &[Set::Plain(acc)], None)
        }
        Verb::Equal => {
            let inp = Inputs::new(cli, None)?;
            let x = match inp.specs.first() {
                Some(s) => s.eval(inp.arity)?.plain()?,
                None => AlgebraicSet::whole(inp.arity)?,
            };
            let (f, g) = (inp.poly(&cli.f, "f")?, inp.poly(&cli.g, "g")?);
            let equal = equal_on(&x, &f, &g)?;
            let diff = disagreements(&x, &f, &g)?;
            let at = diff.cells().iter().next().map(|&c| point(&diff.arrangement().cell(c).sample));
            Ok(Outcome { json: Some(json!({ "equal": equal, "disagreement": at })), verdict: equal })
        }
        Verb::Admissible => admissible(cli),
        Verb::Layered => {
            let inp = Inputs::new(cli, None)?;
            let set = match inp.specs.first() {
                Some(s) => s.eval(inp.arity)?.layered()?,
                None => {
                    let texts: Vec<&String> = cli.f.iter().chain(cli.g.iter()).collect();
                    if texts.is_empty() {
                        return Err(CliError::Usage("missing -f".into()));
                    }
                    if texts.iter().any(|t| t.contains('@')) {
                        let polys = texts.iter().map(|t| layered_poly(t, inp.arity)).collect::<Result<Vec<LayeredPolynomial>, _>>()?;
                        trop_core::layered_set(&polys)?
                    } else {
                        let polys = texts.iter().map(|t| poly(t, inp.arity)).collect::<Result<Vec<_>, _>>()?;
                        layered_set_of(&polys)?
                    }
                }
            };
            emit(cli, &[Set::Layered(set)], None)
        }
        Verb::Dim => dim(cli),
        Verb::Render => {
            let inp = Inputs::new(cli, None)?;
            let mut sets = inp.sets()?;
            for t in [&cli.f, &cli.g] {
                if t.is_some() {
                    let f = inp.poly(t, "f")?;
                    sets.push(Set::Plain(if cli.total { total_locus(&f)? } else { corner_locus(&f)? }));
                }
            }
            if sets.is_empty() {
                return Err(CliError::Usage("nothing to render".into()));
            }
            let highlight = if cli.highlight {
                match (sets.first(), sets.get(1)) {
                    (Some(Set::Plain(a)), Some(Set::Plain(b))) => Some(intersect(a, b)?),
                    _ => return Err(CliError::Usage("--highlight needs two supertropical sets".into())),
                }
            } else {
                None
            };
            let svg = draw(&sets, highlight.as_ref())?;
            match &cli.svg {
                Some(path) => fs::write(path, svg)?,
                None => out.write_all(svg.as_bytes())?,
            }
            Ok(Outcome { json: None, verdict: true })
        }
    }
}

fn term_text(f: &Polynomial, i: usize) -> String {
    f.sub_sum(|k| k == i).expect("one term").to_string()
}

fn draw(sets: &[Set], highlight: Option<&AlgebraicSet>) -> Result<String, CliError> {
    let drawables: Vec<Drawable> = sets
        .iter()
        .map(|s| match s {
            Set::Plain(x) => Drawable::Plain(&x.carrier),
            Set::Layered(l) => Drawable::Layered(l),
        })
        .collect();
    Ok(render_svg(&drawables, highlight.map(|h| &h.carrier), &RenderSpec::default())?)
}

/// Prints JSON, or writes SVG when `--svg` is given.
fn emit(cli: &Cli, sets: &[Set], highlight: Option<&AlgebraicSet>) -> Result<Outcome, CliError> {
    if let Some(path) = &cli.svg {
        fs::write(path, draw(sets, highlight)?)?;
        return Ok(Outcome { json: None, verdict: true });
    }
    let value = match &sets[0] {
        Set::Plain(x) => serde_json::to_value(algebraic_set(x)),
        Set::Layered(l) => serde_json::to_value(layered_set(l)),
    }
    .expect("JSON values serialize");
    Ok(Outcome::ok(value))
}

fn eval(cli: &Cli) -> Result<Outcome, CliError> {
    let f = cli.f.as_deref().ok_or_else(|| CliError::Usage("missing -f".into()))?;
    let a = cli.a.as_deref().ok_or_else(|| CliError::Usage("missing -a".into()))?;
    let coords: Vec<&str> = a.split(',').map(str::trim).collect();
    let n = coords.len();
    if f.contains('@') || a.contains('@') {
        let f = layered_poly(f, n)?;
        let pt = coords.iter().map(|c| c.parse()).collect::<Result<Vec<LayeredValue>, Error>>()?;
        Ok(Outcome::ok(json!(eval_layered(&f, &pt)?.to_string())))
    } else {
        let f = poly(f, n)?;
        let pt = coords.iter().map(|c| c.parse()).collect::<Result<Vec<SupertropicalValue>, Error>>()?;
        Ok(Outcome::ok(json!(f.eval(&pt)?.to_string())))
    }
}

fn pow_layered(a: &LayeredValue, e: &Rational) -> Result<LayeredValue, CliError> {
    if e.is_integer() && *e >= Rational::from_integer(0) {
        let k = e.to_integer();
        let mut v = LayeredValue::tangible(Rational::from_integer(0));
        for _ in 0..k {
            v = v.times(a);
        }
        Ok(v)
    } else if a.layer == Layer::ONE {
        Ok(LayeredValue::tangible(a.magnitude * e))
    } else {
        Err(CliError::Usage(format!("exponent {e} of a value on layer {}", a.layer)))
    }
}

fn eval_layered(f: &LayeredPolynomial, pt: &[LayeredValue]) -> Result<LayeredValue, CliError> {
    let mut acc: Option<LayeredValue> = None;
    for m in f.terms() {
        let mut v = m.coefficient.clone();
        for (x, e) in pt.iter().zip(&m.exponents) {
            v = v.times(&pow_layered(x, e)?);
        }
        acc = Some(match acc {
            Some(s) => s.plus(&v),
            None => v,
        });
    }
    Ok(acc.expect("nonempty polynomial"))
}

#[derive(Serialize)]
struct WitnessJson {
    f: String,
    g: String,
    exceptions: Vec<Vec<[i128; 2]>>,
    disagreement: Vec<[i128; 2]>,
}

fn admissible(cli: &Cli) -> Result<Outcome, CliError> {
    let inp = Inputs::new(cli, None)?;
    let x = inp.one_set(cli)?;
    let witnesses = match cli.witnesses.as_str() {
        "auto" => default_witnesses(&x),
        w => {
            let path = w.strip_prefix('@').ok_or_else(|| CliError::Usage("--witnesses takes auto or @file".into()))?;
            let text = fs::read_to_string(path)?;
            let pairs: Vec<[String; 2]> =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad witness file: {e}")))?;
            pairs
                .iter()
                .map(|[f, g]| Ok((poly(f, inp.arity)?, poly(g, inp.arity)?)))
                .collect::<Result<Vec<_>, CliError>>()?
        }
    };
    let v = check_admissible(&x, &witnesses)?;
    let witness = v.witness.as_ref().map(|w| WitnessJson {
        f: w.pair.0.to_string(),
        g: w.pair.1.to_string(),
        exceptions: w.exceptions.cells().iter().map(|&c| point(&w.exceptions.arrangement().cell(c).sample)).collect(),
        disagreement: point(&w.disagreement),
    });
    let value = json!({
        "verdict": v.verdict.name(),
        "tested": v.tested,
        "certificate": v.certificate.as_ref().map(|p| p.to_string()),
        "witness": witness,
    });
    Ok(Outcome { json: Some(value), verdict: v.verdict == trop_core::Verdict::Admissible })
}

fn chain_json(r: &ChainReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            let rels: Vec<Vec<String>> = s.relations.iter().map(|f| f.iter().map(|r| r.to_string()).collect()).collect();
            json!({ "free_before": s.free_before, "free_after": s.free_after, "relations": rels })
        })
        .collect();
    json!({
        "valid": true,
        "length": r.length,
        "arity": r.arity,
        "maximal": r.maximal,
        "certified_irreducible": r.certified_irreducible,
        "steps": steps,
    })
}

fn dim(cli: &Cli) -> Result<Outcome, CliError> {
    let inp = Inputs::new(cli, None)?;
    if inp.specs.len() >= 2 {
        let members = inp.sets()?.into_iter().map(Set::plain).collect::<Result<Vec<_>, _>>()?;
        return match verify_chain(&VarietyChain { members }) {
            Ok(r) => Ok(Outcome::ok(chain_json(&r))),
            Err(Error::InvalidChain(reason)) => {
                Ok(Outcome { json: Some(json!({ "valid": false, "reason": reason })), verdict: false })
            }
            Err(e) => Err(e.into()),
        };
    }
    let x = inp.one_set(cli)?;
    let d = dimension(&x)?;
    let facets: Vec<Value> = reduce_facets(&x)?
        .iter()
        .map(|r| {
            json!({
                "dim": r.facet.dim,
                "free": r.free,
                "relations": r.relations.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "dimension": d, "facets": facets })))
}
