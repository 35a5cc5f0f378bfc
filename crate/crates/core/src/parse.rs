//! Parser for the polynomial literal grammar.
//!
//! Terms are joined by `+`/`-`. A term is an optional coefficient (`p/q` or
//! an integer in rational mode, `(re,im)` in complex mode) `*`-joined with
//! factors `zJ`, `zJ^K`, `a(i1,...,in)`, `a(i1,...,in)^K`. Whitespace is
//! insignificant. Errors carry the byte position.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::poly::{PolyContext, SparsePoly, Variable};
use crate::scalar::{Scalar, ScalarMode};

pub fn parse_poly(text: &str, ctx: &PolyContext) -> Result<SparsePoly> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let poly = parser.poly()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a PolyContext,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("expected '{}'", b as char))),
        }
    }

    fn poly(&mut self) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(self.ctx);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(_) => false,
            None => return Err(self.err("empty polynomial")),
        };
        loop {
            let term = self.term()?;
            out = if negate {
                out.sub(&term)?
            } else {
                out.add(&term)?
            };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut out = self.element()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            out = out.mul(&self.element()?)?;
        }
        Ok(out)
    }

    fn element(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'z') => self.z_factor(),
            Some(b'a') => self.param_factor(),
            Some(b'(') => self.complex_coeff(),
            Some(b) if b.is_ascii_digit() => self.rational_coeff(),
            _ => Err(self.err("expected a coefficient or a factor")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<BigInt>().map_err(|e| Error::Parse {
            pos: start,
            msg: format!("bad integer: {e}"),
        })
    }

    fn small_uint(&mut self, what: &str) -> Result<u32> {
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| self.err(&format!("{what} too large")))
    }

    fn rational_coeff(&mut self) -> Result<SparsePoly> {
        let numer = self.integer()?;
        let value = if let Some(b'/') = self.peek() {
            self.pos += 1;
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            BigRational::new(numer, denom)
        } else {
            BigRational::from_integer(numer)
        };
        let scalar = match self.ctx.mode() {
            ScalarMode::Rational => Scalar::Rational(value),
            // integer and p/q literals are accepted in complex mode too
            ScalarMode::Complex => Scalar::Complex(Complex64::new(
                crate::scalar::rational_to_f64(&value),
                0.0,
            )),
        };
        SparsePoly::constant(self.ctx, scalar)
    }

    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            let ok = b.is_ascii_digit()
                || b == b'.'
                || b == b'e'
                || b == b'E'
                || ((b == b'+' || b == b'-')
                    && self.pos > start
                    && matches!(self.bytes[self.pos - 1], b'e' | b'E'))
                || ((b == b'+' || b == b'-') && self.pos == start);
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a float"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        text.parse::<f64>().map_err(|e| Error::Parse {
            pos: start,
            msg: format!("bad float {text:?}: {e}"),
        })
    }

    fn complex_coeff(&mut self) -> Result<SparsePoly> {
        if self.ctx.mode() != ScalarMode::Complex {
            return Err(self.err("complex literal in rational mode"));
        }
        self.expect(b'(')?;
        let re = self.float()?;
        self.expect(b',')?;
        let im = self.float()?;
        self.expect(b')')?;
        SparsePoly::constant(self.ctx, Scalar::Complex(Complex64::new(re, im)))
    }

    fn exponent(&mut self) -> Result<u32> {
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.small_uint("exponent")
        } else {
            Ok(1)
        }
    }

    fn z_factor(&mut self) -> Result<SparsePoly> {
        self.expect(b'z')?;
        let at = self.pos;
        let j = self.small_uint("variable index")? as usize;
        let v = Variable::z(j);
        if self.ctx.var_index(&v).is_err() {
            return Err(Error::Parse {
                pos: at,
                msg: format!("variable z{j} out of range for this context"),
            });
        }
        let e = self.exponent()?;
        SparsePoly::monomial_of(self.ctx, &[(v, e)], Scalar::one(self.ctx.mode()))
    }

    fn param_factor(&mut self) -> Result<SparsePoly> {
        self.expect(b'a')?;
        let at = self.pos;
        self.expect(b'(')?;
        let mut entries = vec![self.small_uint("multi-index entry")?];
        while let Some(b',') = self.peek() {
            self.pos += 1;
            entries.push(self.small_uint("multi-index entry")?);
        }
        self.expect(b')')?;
        let alpha = MultiIndex::new(entries);
        let v = Variable::param(alpha.clone());
        if self.ctx.var_index(&v).is_err() {
            return Err(Error::Parse {
                pos: at,
                msg: format!("parameter a{alpha} out of range for this context"),
            });
        }
        let e = self.exponent()?;
        SparsePoly::monomial_of(self.ctx, &[(v, e)], Scalar::one(self.ctx.mode()))
    }
}

/// Parses a variable descriptor such as `z1` or `a(0,2,1)`.
pub fn parse_variable(text: &str, ctx: &PolyContext) -> Result<Variable> {
    let poly = parse_poly(text.trim(), ctx)?;
    let mut terms = poly.terms();
    if let Some((m, c)) = terms.next() {
        if terms.next().is_none() && c.is_one() && m.total_degree() == 1 {
            let idx = m
                .exponents()
                .iter()
                .position(|&e| e == 1)
                .expect("degree one");
            return Ok(ctx.var_at(idx));
        }
    }
    Err(Error::Parse {
        pos: 0,
        msg: format!("{text:?} is not a variable descriptor"),
    })
}
