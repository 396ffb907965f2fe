//! Generator expressions for `--tuple`:
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := 'id' | 'T(' rational (',' rational)* ')' | name | '(' expr ')'
//! ```
//!
//! `a*b` is the composite `x ↦ a(b(x))`; `^-1` inverts, `^k` repeats.

use cocycle_core::json::parse_scalar;
use cocycle_core::{QDiffeo, QGroup, Rational};

use crate::error::CliError;

/// Canonical label of a translation literal, e.g. `T(1/2,-3)`.
pub fn translation_label(shift: &[Rational]) -> String {
    let parts: Vec<String> = shift.iter().map(ToString::to_string).collect();
    format!("T({})", parts.join(","))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    group: &'a QGroup,
    cap: u32,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CliError {
        CliError::Expr(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn compose(&self, a: &QDiffeo, b: &QDiffeo) -> Result<QDiffeo, CliError> {
        Ok(a.compose_capped(b, self.cap)?)
    }

    fn expr(&mut self) -> Result<QDiffeo, CliError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = self.compose(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QDiffeo, CliError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let k: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("expected an integer exponent"))?;
        let letter = if k < 0 { base.inverse() } else { base };
        let mut out = QDiffeo::identity(self.group.dim());
        for _ in 0..k.unsigned_abs() {
            out = self.compose(&out, &letter)?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<QDiffeo, CliError> {
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(inner);
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() {
            return Err(self.err("expected a generator"));
        }
        if name == "T" && self.peek() == Some('(') {
            self.bump();
            let close = self.src[self.pos..].find(')').ok_or_else(|| self.err("unclosed translation literal"))?;
            let body = &self.src[self.pos..self.pos + close];
            self.pos += close + 1;
            let shift = body.split(',').map(parse_scalar::<Rational>).collect::<Result<Vec<_>, _>>()?;
            if shift.len() != self.group.dim() {
                return Err(self.err(&format!("translation needs {} coordinates", self.group.dim())));
            }
            return Ok(QDiffeo::translation(&shift, translation_label(&shift)));
        }
        if name == cocycle_core::diffeo::IDENTITY_LABEL {
            return Ok(QDiffeo::identity(self.group.dim()));
        }
        self.group
            .generators()
            .iter()
            .find(|g| g.label() == name)
            .cloned()
            .ok_or_else(|| CliError::Expr(format!("unknown generator {name:?}")))
    }
}

/// Parses one generator expression against the scenario's generators.
pub fn parse_element(src: &str, group: &QGroup, degree_cap: u32) -> Result<QDiffeo, CliError> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { src: &compact, pos: 0, group, cap: degree_cap };
    let out = p.expr()?;
    if p.pos != compact.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cocycle_core::scalar::rational;
    use cocycle_core::{GroupPresentation, NamedForm, QForm, QPolynomial};

    fn group() -> QGroup {
        let area = QForm::dx(2, 0).wedge(&QForm::dx(2, 1)).unwrap();
        let sigma = QDiffeo::shear(0, QPolynomial::var(2, 1).pow(2), "sigma").unwrap();
        let rot = QDiffeo::linear(&[vec![rational(0, 1), rational(-1, 1)], vec![rational(1, 1), rational(0, 1)]], "rot90").unwrap();
        GroupPresentation::new(2, vec![sigma, rot], vec![NamedForm { name: "w".into(), form: area }]).unwrap()
    }

    #[test]
    fn literals_and_names() {
        let g = group();
        let t = parse_element("T(1, -1/2)", &g, 64).unwrap();
        assert_eq!(t.label(), "T(1,-1/2)");
        assert_eq!(t.translation_vector().unwrap(), vec![rational(1, 1), rational(-1, 2)]);
        let s = parse_element("sigma", &g, 64).unwrap();
        assert_eq!(s.label(), "sigma");
        assert!(parse_element("id", &g, 64).unwrap().is_identity());
    }

    #[test]
    fn products_powers_and_inverses() {
        let g = group();
        let r4 = parse_element("rot90^4", &g, 64).unwrap();
        assert!(r4.is_identity());
        let w = parse_element("sigma*sigma^-1", &g, 64).unwrap();
        assert!(w.is_identity());
        assert_eq!(w.label(), "sigma*sigma^-1");
        let x = parse_element("(rot90*sigma)^-1", &g, 64).unwrap();
        let y = parse_element("sigma^-1*rot90^-1", &g, 64).unwrap();
        assert_eq!(x.forward(), y.forward());
        assert_eq!(x.label(), y.label());
    }

    #[test]
    fn errors() {
        let g = group();
        for bad in ["tau", "T(1)", "sigma*", "(sigma", "sigma^x", "T(1,0", ""] {
            assert!(parse_element(bad, &g, 64).is_err(), "{bad}");
        }
        // σ·rot90·σ has degree 4
        assert!(parse_element("sigma*rot90*sigma", &g, 2).is_err());
    }
}
