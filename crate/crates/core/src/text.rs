//! Text grammars for Lie elements and tree vectors.
//!
//! ```text
//! element := term (("+" | "-") term)*
//! term    := [rational "*"] atom
//! atom    := "Dp[" tree "]" | "Dm[" tree "]" | "d"        (Lie elements)
//! atom    := tree | "1"                                   (tree vectors)
//! ```
//!
//! A leading sign is allowed and ASCII whitespace may separate tokens.
//! Rendering sorts terms canonically, omits unit coefficients and writes
//! zero as `0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combination::Combination;
use crate::ctrep::{CtBasis, CtVectorOver};
use crate::error::{Error, Result};
use crate::liealg::{BasisElement, LieElementOver};
use crate::scalar::render_rational;
use crate::trees::RootedTree;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self
            .rest()
            .trim_start_matches(|c: char| c.is_ascii_whitespace());
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        (len > 0).then(|| &self.text[start..self.pos])
    }

    /// `digits ["/" digits] ws "*"`, consumed only when complete.
    fn coefficient(&mut self) -> Result<Option<BigRational>> {
        let start = self.pos;
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let mut den = "1";
        if self.eat("/") {
            match self.digits() {
                Some(d) => den = d,
                None => return Err(Error::parse(self.pos, "expected a denominator")),
            }
        }
        self.skip_ws();
        if !self.eat("*") {
            self.pos = start;
            return Ok(None);
        }
        let num: BigInt = num.parse().expect("digit run");
        let den: BigInt = den.parse().expect("digit run");
        if den.is_zero() {
            return Err(Error::parse(start, "zero denominator"));
        }
        Ok(Some(BigRational::new(num, den)))
    }

    /// Tree text up to the next `]`, parsed with offsets shifted into place.
    fn bracketed_tree(&mut self) -> Result<RootedTree> {
        let start = self.pos;
        let Some(end) = self.rest().find(']') else {
            return Err(Error::parse(self.text.len(), "missing ']'"));
        };
        let tree = RootedTree::parse(&self.rest()[..end]).map_err(|e| shift(e, start))?;
        self.pos += end + 1;
        Ok(tree)
    }

    /// A balanced parenthesis group starting at the cursor.
    fn tree(&mut self) -> Result<RootedTree> {
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::parse(start + i, "unbalanced ')'"))?;
                    if depth == 0 {
                        let tree =
                            RootedTree::parse(&self.rest()[..=i]).map_err(|e| shift(e, start))?;
                        self.pos += i + 1;
                        return Ok(tree);
                    }
                }
                c if c.is_ascii_whitespace() => {}
                _ => break,
            }
        }
        Err(Error::parse(start, "expected a tree"))
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

fn parse_combination<K: Ord + Clone>(
    text: &str,
    mut atom: impl FnMut(&mut Cursor<'_>) -> Result<K>,
) -> Result<Combination<K, BigRational>> {
    let mut c = Cursor::new(text);
    let mut out = Combination::zero();
    c.skip_ws();
    if c.peek().is_none() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut negative = false;
    if c.eat("-") {
        negative = true;
    } else {
        c.eat("+");
    }
    loop {
        c.skip_ws();
        let coeff = c.coefficient()?.unwrap_or_else(BigRational::one);
        c.skip_ws();
        let key = atom(&mut c)?;
        out.add_term(key, if negative { -coeff } else { coeff });
        c.skip_ws();
        match c.peek() {
            None => return Ok(out),
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(Error::parse(c.pos, "expected '+' or '-'")),
        }
        c.pos += 1;
    }
}

fn render_combination<K: Ord + Clone>(
    x: &Combination<K, BigRational>,
    atom: impl Fn(&K) -> String,
) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in x.iter().enumerate() {
        let magnitude = c.abs();
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if !magnitude.is_one() {
            out.push_str(&render_rational(&magnitude));
            out.push('*');
        }
        out.push_str(&atom(k));
    }
    out
}

/// Parses e.g. `Dp[(()())] + 2*Dm[()] - d`.
pub fn parse_element(text: &str) -> Result<LieElementOver<BigRational>> {
    parse_combination(text, |c| {
        let start = c.pos;
        if c.eat("Dp[") {
            Ok(BasisElement::Plus(c.bracketed_tree()?))
        } else if c.eat("Dm[") {
            Ok(BasisElement::Minus(c.bracketed_tree()?))
        } else if c.eat("d") {
            Ok(BasisElement::Grade)
        } else {
            Err(Error::parse(
                start,
                "unknown atom; expected Dp[..], Dm[..] or d",
            ))
        }
    })
}

pub fn render_element(x: &LieElementOver<BigRational>) -> String {
    render_combination(x, BasisElement::render)
}

/// Parses e.g. `2*(()()) - ((())) + 1/2*1`.
pub fn parse_ct_vector(text: &str) -> Result<CtVectorOver<BigRational>> {
    parse_combination(text, |c| {
        if c.eat("1") {
            Ok(CtBasis::One)
        } else {
            c.tree().map(CtBasis::Tree)
        }
    })
}

pub fn render_ct_vector(v: &CtVectorOver<BigRational>) -> String {
    render_combination(v, CtBasis::render)
}

/// Parses a single basis element such as `Dm[()]` or `d`.
pub fn parse_basis_element(text: &str) -> Result<BasisElement> {
    let x = parse_element(text)?;
    match x.iter().next() {
        Some((b, c)) if x.len() == 1 && c.is_one() => Ok(b.clone()),
        _ => Err(Error::parse(0, "expected a single basis element")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{dminus, dplus, grade};

    type El = LieElementOver<BigRational>;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn element_examples() {
        assert_eq!(parse_element("d").unwrap(), grade());
        assert_eq!(parse_element("Dm[()] ").unwrap(), dminus(t("()")));
        let want: El = dplus::<BigRational>(t("(()())")).minus(&dplus(t("((()))")).scaled(&q(2)));
        assert_eq!(parse_element("Dp[(()())] - 2*Dp[((()))]").unwrap(), want);
    }

    #[test]
    fn element_rendering() {
        let x = parse_element("- d + 2*Dm[()] + Dp[( () () )]").unwrap();
        assert_eq!(render_element(&x), "Dp[(()())] + 2*Dm[()] - d");
        assert_eq!(render_element(&El::zero()), "0");
        let x = parse_element("-1/2*Dp[()] + 3/4 * d").unwrap();
        assert_eq!(render_element(&x), "-1/2*Dp[()] + 3/4*d");
        assert_eq!(render_element(&parse_element("d - d").unwrap()), "0");
    }

    #[test]
    fn element_errors_carry_offsets() {
        assert!(matches!(
            parse_element(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_element("Dq[()]"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_element("d + Dp[(()]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_element("d d"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse_element("2*"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("1/0*d"), Err(Error::Parse { .. })));
    }

    #[test]
    fn ct_vectors() {
        let v = parse_ct_vector("2*(()()) - ((()))").unwrap();
        assert_eq!(render_ct_vector(&v), "-((())) + 2*(()())");
        let v = parse_ct_vector("1 + 3*1 - ()").unwrap();
        assert_eq!(render_ct_vector(&v), "4*1 - ()");
        assert!(parse_ct_vector("(()").is_err());
        assert!(parse_ct_vector("2").is_err());
    }

    #[test]
    fn single_basis_elements() {
        assert_eq!(
            parse_basis_element("Dp[()]").unwrap(),
            BasisElement::Plus(t("()"))
        );
        assert!(parse_basis_element("2*d").is_err());
        assert!(parse_basis_element("d + Dp[()]").is_err());
    }
}
