//! The category description file format.
//!
//! A file is a sequence of lines; `#` starts a comment, blank lines are
//! ignored. The first record must declare the coefficient field, every other
//! name must be declared before use, and unknown record kinds are rejected:
//!
//! ```text
//! field Q              # or: field 5   (a prime)
//! object X1
//! object X2
//! gen e1 X1 X1 0       # name, source, target, degree
//! gen u  X1 X2 0
//! unit X1 e1
//! mu 2 u e1 u 1        # arity n, inputs a_n ... a_1, output, coefficient
//! ```
//!
//! Coefficients are exact literals: integers, fractions `a/b`, or residues.
//! Generator names must be globally unique so that `mu` records are
//! unambiguous. Parsing validates the category (structure, units, relations)
//! before returning it, and serialization of a parsed category reproduces an
//! equivalent file.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cat::{AInftyCategory, CategoryBuilder};
use crate::error::FormatError;
use crate::scalar::Field;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn semantic(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Semantic { line, msg: msg.into() }
}

/// Parse and validate a category file. `field_override` recoerces every
/// coefficient literal into the given field instead of the declared one.
pub fn parse_category(
    text: &str,
    field_override: Option<Field>,
) -> Result<AInftyCategory, FormatError> {
    let mut field: Option<Field> = None;
    let mut builder: Option<CategoryBuilder> = None;
    let mut objects: HashMap<String, usize> = HashMap::new();
    let mut gens: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line_no, "duplicate field declaration"));
                }
                if tokens.len() != 2 {
                    return Err(syntax(line_no, "expected: field Q | field <prime>"));
                }
                let declared = parse_field(tokens[1])
                    .ok_or_else(|| syntax(line_no, format!("unknown field `{}`", tokens[1])))?;
                declared
                    .validate()
                    .map_err(|e| semantic(line_no, e.to_string()))?;
                let chosen = field_override.unwrap_or(declared);
                field = Some(chosen);
                builder = Some(CategoryBuilder::new(chosen));
            }
            "object" | "gen" | "unit" | "mu" => {
                let Some(b) = builder.as_mut() else {
                    return Err(syntax(line_no, "the field must be declared first"));
                };
                let f = field.unwrap();
                match tokens[0] {
                    "object" => {
                        if tokens.len() != 2 {
                            return Err(syntax(line_no, "expected: object <label>"));
                        }
                        if objects.contains_key(tokens[1]) {
                            return Err(semantic(line_no, format!("object `{}` declared twice", tokens[1])));
                        }
                        let id = b.add_object(tokens[1]);
                        objects.insert(tokens[1].to_string(), id);
                    }
                    "gen" => {
                        if tokens.len() != 5 {
                            return Err(syntax(line_no, "expected: gen <name> <source> <target> <degree>"));
                        }
                        let src = *objects.get(tokens[2]).ok_or_else(|| {
                            semantic(line_no, format!("unknown object `{}`", tokens[2]))
                        })?;
                        let tgt = *objects.get(tokens[3]).ok_or_else(|| {
                            semantic(line_no, format!("unknown object `{}`", tokens[3]))
                        })?;
                        let degree: i64 = tokens[4]
                            .parse()
                            .map_err(|_| syntax(line_no, format!("bad degree `{}`", tokens[4])))?;
                        if gens.contains_key(tokens[1]) {
                            return Err(semantic(
                                line_no,
                                format!("generator name `{}` reused; names must be unique", tokens[1]),
                            ));
                        }
                        let id = b
                            .add_generator(tokens[1], src, tgt, degree)
                            .map_err(|e| semantic(line_no, e.to_string()))?;
                        gens.insert(tokens[1].to_string(), id);
                    }
                    "unit" => {
                        if tokens.len() != 3 {
                            return Err(syntax(line_no, "expected: unit <object> <gen>"));
                        }
                        let obj = *objects.get(tokens[1]).ok_or_else(|| {
                            semantic(line_no, format!("unknown object `{}`", tokens[1]))
                        })?;
                        let gen = *gens.get(tokens[2]).ok_or_else(|| {
                            semantic(line_no, format!("unknown generator `{}`", tokens[2]))
                        })?;
                        b.set_unit(obj, gen).map_err(|e| semantic(line_no, e.to_string()))?;
                    }
                    "mu" => {
                        if tokens.len() < 4 {
                            return Err(syntax(
                                line_no,
                                "expected: mu <arity> <inputs...> <output> <coefficient>",
                            ));
                        }
                        let arity: usize = tokens[1]
                            .parse()
                            .map_err(|_| syntax(line_no, format!("bad arity `{}`", tokens[1])))?;
                        if arity == 0 || tokens.len() != arity + 4 {
                            return Err(syntax(
                                line_no,
                                format!("mu record of arity {arity} needs {} tokens", arity + 4),
                            ));
                        }
                        let mut inputs = Vec::with_capacity(arity);
                        for t in &tokens[2..2 + arity] {
                            inputs.push(*gens.get(*t).ok_or_else(|| {
                                semantic(line_no, format!("unknown generator `{t}`"))
                            })?);
                        }
                        let out = *gens.get(tokens[2 + arity]).ok_or_else(|| {
                            semantic(line_no, format!("unknown generator `{}`", tokens[2 + arity]))
                        })?;
                        let coeff = f
                            .parse_scalar(tokens[3 + arity])
                            .map_err(|e| syntax(line_no, e.to_string()))?;
                        // eager degree check so the record is named with its line
                        let expected: i64 = inputs
                            .iter()
                            .map(|&g| b.generator_degree(g))
                            .sum::<i64>()
                            + 2
                            - arity as i64;
                        if b.generator_degree(out) != expected {
                            return Err(semantic(
                                line_no,
                                format!(
                                    "output `{}` has degree {}, the degree rule demands {expected}",
                                    tokens[2 + arity],
                                    b.generator_degree(out)
                                ),
                            ));
                        }
                        b.add_term(&inputs, out, coeff)
                            .map_err(|e| semantic(line_no, e.to_string()))?;
                    }
                    _ => unreachable!(),
                }
            }
            other => {
                return Err(syntax(line_no, format!("unknown record kind `{other}`")));
            }
        }
    }
    let Some(b) = builder else {
        return Err(syntax(1, "empty input: a category file must declare its field"));
    };
    let cat = b.build()?;
    cat.validate()?;
    Ok(cat)
}

fn parse_field(token: &str) -> Option<Field> {
    match token {
        "Q" | "q" => Some(Field::Rationals),
        t => {
            let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
            digits.parse::<u64>().ok().map(Field::Prime)
        }
    }
}

/// Render a category as a file, with optional leading comment lines.
pub fn serialize_category(cat: &AInftyCategory, notes: &[&str]) -> String {
    let mut out = String::new();
    for n in notes {
        let _ = writeln!(out, "# {n}");
    }
    let _ = match cat.field() {
        Field::Rationals => writeln!(out, "field Q"),
        Field::Prime(p) => writeln!(out, "field {p}"),
    };
    for label in cat.object_labels() {
        let _ = writeln!(out, "object {label}");
    }
    let labels = cat.object_labels();
    for g in cat.gens() {
        let _ = writeln!(out, "gen {} {} {} {}", g.name, labels[g.source], labels[g.target], g.degree);
    }
    for (obj, label) in labels.iter().enumerate() {
        if let Some(e) = cat.unit(obj) {
            let _ = writeln!(out, "unit {} {}", label, cat.gen(e).name);
        }
    }
    for (key, comb) in cat.ops() {
        for (g, c) in comb {
            let _ = write!(out, "mu {}", key.len());
            for &i in key {
                let _ = write!(out, " {}", cat.gen(i).name);
            }
            let _ = writeln!(out, " {} {}", cat.gen(*g).name, c);
        }
    }
    out
}
