use super::cyclotomic::CyclotomicNumber;
use super::AlgebraError;

/// Parses expressions such as `2`, `3/4`, `1+sqrt(5)`, `2*phi`, `√3`, `zeta(8)^3 + 1`.
pub fn parse_cyclotomic(input: &str) -> Result<CyclotomicNumber, AlgebraError> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, i: 0, input };
    let v = p.sum()?;
    if p.i != chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> AlgebraError {
        AlgebraError::Parse { input: self.input.to_string(), reason: format!("{reason} at position {}", self.i) }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<CyclotomicNumber, AlgebraError> {
        let mut acc = if self.eat('-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<CyclotomicNumber, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else if matches!(self.peek(), Some(c) if c.is_alphabetic() || c == '√' || c == 'φ' || c == '(') {
                // implicit product: 2√5, 3phi
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<CyclotomicNumber, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.integer()? as i64;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, AlgebraError> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let s: String = self.s[start..self.i].iter().collect();
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn word(&mut self) -> String {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.i += 1;
        }
        self.s[start..self.i].iter().collect()
    }

    fn paren_integer(&mut self) -> Result<u64, AlgebraError> {
        if self.eat('(') {
            let n = self.integer()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            Ok(n)
        } else {
            self.integer()
        }
    }

    fn atom(&mut self) -> Result<CyclotomicNumber, AlgebraError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(CyclotomicNumber::from_integer(self.integer()? as i64)),
            Some('(') => {
                self.i += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some('√') => {
                self.i += 1;
                let n = self.paren_integer()?;
                if n == 0 {
                    return Ok(CyclotomicNumber::zero());
                }
                Ok(CyclotomicNumber::sqrt_int(n))
            }
            Some('φ') => {
                self.i += 1;
                Ok(CyclotomicNumber::golden_ratio())
            }
            Some(c) if c.is_ascii_alphabetic() => match self.word().as_str() {
                "phi" => Ok(CyclotomicNumber::golden_ratio()),
                "i" => Ok(CyclotomicNumber::zeta(4)),
                "sqrt" => {
                    let n = self.paren_integer()?;
                    if n == 0 {
                        return Ok(CyclotomicNumber::zero());
                    }
                    Ok(CyclotomicNumber::sqrt_int(n))
                }
                "zeta" => {
                    let n = self.paren_integer()?;
                    if n == 0 {
                        return Err(self.err("zeta needs n >= 1"));
                    }
                    Ok(CyclotomicNumber::zeta(n))
                }
                w => Err(self.err(&format!("unknown name {w:?}"))),
            },
            _ => Err(self.err("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let c = CyclotomicNumber::from_integer;
        assert_eq!(parse_cyclotomic("1+sqrt(5)").unwrap(), &c(1) + &CyclotomicNumber::sqrt5());
        assert_eq!(parse_cyclotomic("2phi").unwrap(), &c(2) * &CyclotomicNumber::golden_ratio());
        assert_eq!(parse_cyclotomic("2√3").unwrap(), &c(2) * &CyclotomicNumber::sqrt3());
        assert_eq!(parse_cyclotomic("3/4").unwrap(), CyclotomicNumber::from_ratio(3, 4));
        assert_eq!(parse_cyclotomic("-(1)").unwrap(), c(-1));
        assert_eq!(parse_cyclotomic("zeta(4)^2").unwrap(), c(-1));
        assert_eq!(parse_cyclotomic("phi^2").unwrap(), &CyclotomicNumber::golden_ratio() + &c(1));
        assert!(parse_cyclotomic("1+").is_err());
        assert!(parse_cyclotomic("foo").is_err());
    }
}
