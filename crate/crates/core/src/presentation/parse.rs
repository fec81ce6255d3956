use super::{AlgebraPresentation, DeclaredCutoffs, FieldSpec, Generator, NcPolynomial};
use crate::error::{Error, Result};
use crate::linear::PrimeField;

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Statements are separated by newlines or `;`. `#` starts a comment.
pub(super) fn parse_presentation(text: &str) -> Result<AlgebraPresentation> {
    let mut field = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut pending_rels: Vec<(usize, String)> = Vec::new();
    let mut cutoffs = DeclaredCutoffs::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some(rest) = stmt.strip_prefix("gen ") {
                for item in rest.split(',').map(str::trim) {
                    let (name, deg) = item
                        .split_once(':')
                        .ok_or_else(|| syntax(line, format!("expected name:degree, found {item:?}")))?;
                    let (name, deg) = (name.trim(), deg.trim());
                    if !is_name(name) {
                        return Err(syntax(line, format!("invalid generator name {name:?}")));
                    }
                    let degree: i64 = deg
                        .parse()
                        .map_err(|_| syntax(line, format!("invalid degree {deg:?}")))?;
                    if degree < 1 {
                        return Err(Error::InvalidPresentation {
                            line,
                            message: format!("generator {name} has Adams degree {degree} < 1"),
                        });
                    }
                    if generators.iter().any(|g| g.name == name) {
                        return Err(Error::InvalidPresentation {
                            line,
                            message: format!("generator {name} declared twice"),
                        });
                    }
                    generators.push(Generator {
                        name: name.to_string(),
                        degree: degree as usize,
                    });
                }
            } else if let Some(rest) = stmt.strip_prefix("rel ") {
                pending_rels.push((line, rest.trim().to_string()));
            } else if let Some((key, value)) = stmt.split_once('=') {
                let (key, value) = (key.trim(), value.trim());
                let number: u64 = value
                    .parse()
                    .map_err(|_| syntax(line, format!("expected a non-negative integer, found {value:?}")))?;
                match key {
                    "field" => {
                        field = Some(if number == 0 {
                            FieldSpec::Rationals
                        } else {
                            PrimeField::new(number).map_err(|_| Error::InvalidPresentation {
                                line,
                                message: format!("field characteristic {number} is not a supported prime"),
                            })?;
                            FieldSpec::Prime(number)
                        })
                    }
                    "cutoff_adams" => cutoffs.adams = Some(number as usize),
                    "cutoff_hom" => cutoffs.hom = Some(number as usize),
                    _ => return Err(syntax(line, format!("unknown setting {key:?}"))),
                }
            } else {
                return Err(syntax(line, format!("unrecognised statement {stmt:?}")));
            }
        }
    }

    let field = field.ok_or_else(|| syntax(text.lines().count().max(1), "missing `field = ...` line"))?;
    let mut relations = Vec::new();
    for (line, src) in pending_rels {
        relations.push(parse_relation(&src, line, &generators, field.characteristic())?);
    }
    Ok(AlgebraPresentation {
        field,
        generators,
        relations,
        cutoffs,
    })
}

fn parse_relation(src: &str, line: usize, gens: &[Generator], modulus: u64) -> Result<NcPolynomial<i64>> {
    let mut terms = Vec::new();
    for (sign, term) in split_terms(src, line)? {
        terms.push(parse_term(&term, sign, line, gens)?);
    }
    let degree = |w: &Vec<usize>| -> usize { w.iter().map(|&g| gens[g].degree).sum() };
    if let Some((first, _)) = terms.first() {
        let d0 = degree(first);
        if let Some((w, _)) = terms.iter().find(|(w, _)| degree(w) != d0) {
            return Err(Error::Inhomogeneous {
                line,
                first: d0,
                other: degree(w),
            });
        }
    }
    for (w, _) in &terms {
        match w.len() {
            0 => {
                return Err(Error::InvalidPresentation {
                    line,
                    message: "relation has a constant term".into(),
                })
            }
            1 => {
                return Err(Error::InvalidPresentation {
                    line,
                    message: format!("relation has a linear term {}", gens[w[0]].name),
                })
            }
            _ => {}
        }
    }
    let poly = NcPolynomial::from_terms(terms, modulus);
    if poly.is_empty() {
        return Err(Error::InvalidPresentation {
            line,
            message: "relation is zero over the coefficient field".into(),
        });
    }
    Ok(poly)
}

/// Splits `a - b + c` into signed terms.
fn split_terms(src: &str, line: usize) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut expect_term = true;
    for ch in src.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    out.push((sign, std::mem::take(&mut cur)));
                    sign = 1;
                } else if !expect_term {
                    return Err(syntax(line, "dangling operator"));
                }
                if ch == '-' {
                    sign = -sign;
                }
                expect_term = true;
            }
            _ => {
                cur.push(ch);
                if !ch.is_whitespace() {
                    expect_term = false;
                }
            }
        }
    }
    if cur.trim().is_empty() {
        return Err(syntax(line, "expected a term"));
    }
    out.push((sign, cur));
    Ok(out)
}

fn parse_term(term: &str, sign: i64, line: usize, gens: &[Generator]) -> Result<(Vec<usize>, i64)> {
    let mut coef = sign;
    let mut word = Vec::new();
    for factor in term.split('*').map(str::trim) {
        if factor.is_empty() {
            return Err(syntax(line, format!("empty factor in term {:?}", term.trim())));
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            let c: i64 = factor
                .parse()
                .map_err(|_| syntax(line, format!("coefficient {factor:?} out of range")))?;
            coef = coef
                .checked_mul(c)
                .ok_or_else(|| syntax(line, "coefficient out of range"))?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: usize = e
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid exponent in {factor:?}")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        let g = gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| syntax(line, format!("unknown generator {name:?}")))?;
        word.extend(std::iter::repeat_n(g, power));
    }
    Ok((word, coef))
}
