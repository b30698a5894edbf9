use num_bigint::BigInt;
use num_traits::Zero;

use super::{FieldError, QuadScalar, Rational};

/// Parses an exact scalar such as `1+sqrt(7)`, `3/4` or `(-1+sqrt(5))/2`.
///
/// Grammar: decimal or integer literals, `sqrt(<positive integer>)`, the
/// binary operators `+ - * /`, unary minus and parentheses. Radicands are
/// reduced to their squarefree core, so `sqrt(8)` is `2*sqrt(2)`.
pub fn parse_scalar(text: &str) -> Result<QuadScalar, FieldError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        radical: None,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    radical: Option<u32>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> FieldError {
        FieldError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FieldError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<QuadScalar, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuadScalar, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.try_div(&rhs).map_err(|e| match e {
                        FieldError::DivisionByZero => FieldError::Parse {
                            position: at,
                            message: "division by zero".into(),
                        },
                        other => other,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QuadScalar, FieldError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<QuadScalar, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                if &self.src[start..self.pos] != b"sqrt" {
                    self.pos = start;
                    return Err(self.error("unknown identifier"));
                }
                self.expect(b'(')?;
                self.skip_ws();
                let at = self.pos;
                let n = self.digits()?;
                self.expect(b')')?;
                let radicand: u64 = n.try_into().map_err(|_| FieldError::Parse {
                    position: at,
                    message: "radicand too large".into(),
                })?;
                if radicand == 0 {
                    return Err(FieldError::Parse {
                        position: at,
                        message: "sqrt argument must be a positive integer".into(),
                    });
                }
                let root = QuadScalar::sqrt_of(radicand)?;
                if root.d() != 1 {
                    match self.radical {
                        None => self.radical = Some(root.d()),
                        Some(first) if first != root.d() => {
                            return Err(FieldError::MixedRadicals {
                                first,
                                second: root.d(),
                            })
                        }
                        Some(_) => {}
                    }
                }
                Ok(root)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<QuadScalar, FieldError> {
        let whole = if self.src[self.pos] == b'.' {
            BigInt::zero()
        } else {
            self.digits()?
        };
        if self.src.get(self.pos) != Some(&b'.') {
            return Ok(QuadScalar::from_bigint(whole));
        }
        self.pos += 1;
        let start = self.pos;
        let frac = self.digits()?;
        let scale = BigInt::from(10u32).pow((self.pos - start) as u32);
        let value = Rational::new(whole * &scale + frac, scale);
        Ok(QuadScalar::from_rational(&value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn lambda() {
        let x = parse_scalar("1+sqrt(7)").unwrap();
        assert_eq!((x.a(), x.b(), x.d()), (rat(1, 1), rat(1, 1), 7));
    }

    #[test]
    fn plain_rational() {
        let x = parse_scalar("3/4").unwrap();
        assert_eq!((x.a(), x.b(), x.d()), (rat(3, 4), rat(0, 1), 1));
        assert_eq!(parse_scalar("0.25").unwrap(), parse_scalar("1/4").unwrap());
    }

    #[test]
    fn radicand_reduction() {
        let x = parse_scalar("sqrt(12)/2").unwrap();
        assert_eq!((x.a(), x.b(), x.d()), (rat(0, 1), rat(1, 1), 3));
        assert_eq!(parse_scalar("sqrt(8)").unwrap().to_string(), "2*sqrt(2)");
        assert!(parse_scalar("sqrt(49)").unwrap().is_integer());
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(parse_scalar("1 + 2*3").unwrap(), QuadScalar::from_int(7));
        assert_eq!(
            parse_scalar("-(1 - 3)/4").unwrap(),
            parse_scalar("1/2").unwrap()
        );
        assert_eq!(parse_scalar("1/2/2").unwrap(), parse_scalar("1/4").unwrap());
        assert_eq!(
            parse_scalar("(1+sqrt(5))*(1-sqrt(5))").unwrap(),
            QuadScalar::from_int(-4)
        );
    }

    #[test]
    fn errors_carry_position() {
        match parse_scalar("1 + foo") {
            Err(FieldError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_scalar("(1"), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_scalar("1 2"), Err(FieldError::Parse { .. })));
        assert!(matches!(
            parse_scalar("sqrt(0)"),
            Err(FieldError::Parse { .. })
        ));
        assert!(matches!(parse_scalar("1/0"), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_scalar(""), Err(FieldError::Parse { .. })));
    }

    #[test]
    fn mixed_radicals() {
        assert_eq!(
            parse_scalar("sqrt(2) + sqrt(3)"),
            Err(FieldError::MixedRadicals {
                first: 2,
                second: 3
            })
        );
        // sqrt(8) and sqrt(2) share the core 2
        assert_eq!(
            parse_scalar("sqrt(8) - 2*sqrt(2)").unwrap(),
            QuadScalar::zero()
        );
    }
}
