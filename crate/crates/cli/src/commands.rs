use std::fmt;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use schurpos::hopf::{qsym_to_sym, HopfPresentation};
use schurpos::kschur::{branch, expand_in_kschur, kschur_in_h, KSchurExpansion};
use schurpos::schur_pq::{gamma_expand, p_lambda, q_lambda, theta};
use schurpos::verify::{summarize, Criterion, Params, SuiteReport};
use schurpos::{Basis, Expansion, Partition, Rat, StrictPartition, SymFunc};

use crate::report::Report;

/// Degrees above this are refused unless `--force` is given.
pub const DEGREE_CAP: usize = 10;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub fn check_degree(d: usize, force: bool, what: &str) -> Result<(), CliError> {
    if d > DEGREE_CAP && !force {
        return Err(CliError::Input(format!(
            "{what} {d} exceeds the cap of {DEGREE_CAP}; pass --force to override"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Kschur,
    SchurP,
    SchurQ,
    H,
    E,
    P,
    M,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    H,
    E,
    P,
    M,
    S,
    Kschur,
}

impl Target {
    fn basis(self) -> Option<Basis> {
        match self {
            Target::H => Some(Basis::H),
            Target::E => Some(Basis::E),
            Target::P => Some(Basis::P),
            Target::M => Some(Basis::M),
            Target::S => Some(Basis::S),
            Target::Kschur => None,
        }
    }
}

fn terms_text(terms: &std::collections::BTreeMap<Partition, Rat>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(p, c)| format!("{p}:{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn fields(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn expansion_item<W: Write>(r: &mut Report<W>, input: &str, e: &Expansion) -> Result<(), CliError> {
    let value = e.to_json_value().map_err(input_err)?;
    let f = fields([
        ("expansion", value),
        ("integral", e.is_integral().into()),
        ("nonnegative", e.is_nonnegative().into()),
    ]);
    r.item(input, true, f, &format!("{}: {}", e.basis, terms_text(&e.terms)))?;
    Ok(())
}

fn kschur_item<W: Write>(r: &mut Report<W>, input: &str, e: &KSchurExpansion, pass: bool) -> Result<(), CliError> {
    let value = e.to_json_value().map_err(input_err)?;
    let f = fields([
        ("expansion", value),
        ("nonnegative_integral", e.is_nonnegative_integral().into()),
    ]);
    r.item(input, pass, f, &format!("s^({}): {}", e.k, terms_text(&e.terms)))?;
    Ok(())
}

pub fn expand<W: Write>(
    r: &mut Report<W>,
    family: Family,
    index: &Partition,
    k: Option<usize>,
    target: Target,
    force: bool,
) -> Result<(), CliError> {
    check_degree(index.size(), force, "degree")?;
    let need_k = || k.ok_or_else(|| CliError::Input("--k is required for k-Schur functions".into()));
    let strict = || StrictPartition::try_from(index.clone()).map_err(input_err);
    let f = match family {
        Family::Kschur => kschur_in_h(need_k()?, index).map_err(input_err)?,
        Family::SchurP => p_lambda(&strict()?),
        Family::SchurQ => q_lambda(&strict()?),
        Family::H => SymFunc::h(index.clone()),
        Family::E => SymFunc::e(index.clone()),
        Family::P => SymFunc::p(index.clone()),
        Family::M => SymFunc::m(index.clone()),
        Family::S => SymFunc::s(index.clone()),
    };
    let name = clap::ValueEnum::to_possible_value(&family).expect("no skipped variants");
    let mut input = format!("{} {index}", name.get_name());
    if let Some(k) = k {
        input = format!("{input} k={k}");
    }
    match target.basis() {
        Some(b) => expansion_item(r, &input, &f.to_basis(b)),
        None => {
            let e = expand_in_kschur(&f, need_k()?).map_err(input_err)?;
            kschur_item(r, &input, &e, true)
        }
    }
}

pub fn branch_cmd<W: Write>(r: &mut Report<W>, k: usize, lambda: &Partition, force: bool) -> Result<(), CliError> {
    check_degree(lambda.size(), force, "degree")?;
    let e = branch(k, lambda).map_err(input_err)?;
    let pass = e.is_nonnegative_integral();
    kschur_item(r, &format!("k={k} {lambda}"), &e, pass)
}

/// Reads one expansion or a JSON array of them.
fn read_expansions(path: &Path, force: bool) -> Result<Vec<Expansion>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let values = match value {
        Value::Array(vs) => vs,
        v => vec![v],
    };
    let expansions = values
        .into_iter()
        .map(|v| Expansion::from_json_value(v).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))))
        .collect::<Result<Vec<_>, _>>()?;
    for e in &expansions {
        let d = e.terms.keys().map(Partition::size).max().unwrap_or(0);
        check_degree(d, force, "input degree")?;
    }
    Ok(expansions)
}

pub fn theta_cmd<W: Write>(r: &mut Report<W>, input: &Path, basis: Option<Basis>, force: bool) -> Result<(), CliError> {
    for (i, e) in read_expansions(input, force)?.into_iter().enumerate() {
        let image = theta(&e.to_symfunc()).to_basis(basis.unwrap_or(e.basis));
        expansion_item(r, &format!("element {i}"), &image)?;
    }
    Ok(())
}

pub fn gamma_cmd<W: Write>(r: &mut Report<W>, input: &Path, bound: Option<u32>, force: bool) -> Result<(), CliError> {
    for (i, e) in read_expansions(input, force)?.into_iter().enumerate() {
        let label = format!("element {i}");
        match gamma_expand(&e.to_symfunc(), bound) {
            Ok(g) => {
                let value = g.to_json_value(e.basis).map_err(input_err)?;
                let text = g
                    .gamma_terms
                    .iter()
                    .map(|(nu, c)| format!("P{nu}:{c}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                r.item(&label, true, fields([("gamma", value)]), &text)?;
            }
            Err(err) => {
                let msg = err.to_string();
                r.item(&label, false, fields([("error", msg.clone().into())]), &msg)?;
            }
        }
    }
    Ok(())
}

pub fn hopf_cmd<W: Write>(r: &mut Report<W>, path: &Path, elements: &[String], force: bool) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let hp = HopfPresentation::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    check_degree(hp.max_degree(), force, "max_degree")?;

    let report = hp.validate();
    let valid = report.is_combinatorial_hopf();
    let flags = serde_json::to_value(report).expect("plain data serializes");
    r.item(
        "validation",
        valid,
        fields([("validation", flags.clone())]),
        &flags.to_string(),
    )?;

    let words: Vec<Vec<String>> = if elements.is_empty() {
        hp.basis_indices().map(|idx| vec![hp.label(idx).to_string()]).collect()
    } else {
        elements
            .iter()
            .map(|e| e.split('*').map(|s| s.trim().to_string()).collect())
            .collect()
    };
    for word in &words {
        let refs: Vec<&str> = word.iter().map(String::as_str).collect();
        let x = hp.word(&refs).map_err(input_err)?;
        let image = hp.canonical_morphism(&x);
        let check = hp
            .check_character_preservation(std::slice::from_ref(&refs))
            .map_err(input_err)?
            .remove(0);
        let sym = qsym_to_sym(&image);
        let symmetric = sym.is_ok();
        let pass = valid && check.preserved && (symmetric || !report.cocommutative);
        let mut f = fields([
            ("image", image.to_json_value().map_err(input_err)?),
            ("symmetric", symmetric.into()),
            (
                "character",
                json!({
                    "source": check.source.to_string(),
                    "image": check.image.to_string(),
                    "preserved": check.preserved,
                }),
            ),
        ]);
        if let Ok(s) = &sym {
            f.insert("sym".into(), s.to_basis(Basis::S).to_json_value().map_err(input_err)?);
        }
        r.item(&refs.join("*"), pass, f, &image.to_string())?;
    }
    Ok(())
}

pub fn verify_cmd<W: Write>(
    r: &mut Report<W>,
    suite: &str,
    max_degree: Option<usize>,
    k: Option<usize>,
    force: bool,
) -> Result<Value, CliError> {
    if let Some(d) = max_degree {
        check_degree(d, force, "--max-degree")?;
    }
    let suites: Vec<Criterion> = if suite == "all" {
        Criterion::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(CliError::Input)?]
    };
    let params = Params { max_degree, k };
    let mut reports = Vec::new();
    for c in suites {
        let mut items = Vec::new();
        let mut io_err = None;
        c.run_streaming(&params, &mut |item| {
            if io_err.is_some() {
                return;
            }
            let f = fields([
                ("suite", c.name().into()),
                ("criterion", c.number().into()),
                ("detail", item.detail.clone()),
            ]);
            let text = if item.detail.is_null() {
                String::new()
            } else {
                item.detail.to_string()
            };
            if let Err(e) = r.item(&item.input, item.pass, f, &text) {
                io_err = Some(e);
            }
            items.push(item.clone());
        });
        if let Some(e) = io_err {
            return Err(e.into());
        }
        reports.push(SuiteReport { criterion: c, items });
    }
    Ok(summarize(&reports))
}
