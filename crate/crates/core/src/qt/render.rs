//! Parsing of the textual polynomial and fraction forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Monomial, QtPolynomial};

/// Parses a sum of terms such as `-2*q^3*t + t - 7`. Factors may appear in
/// any order and repeat; whitespace is ignored.
pub fn parse_polynomial(s: &str) -> Result<QtPolynomial, String> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let mut sign = BigInt::one();
        if src[i] == '+' || src[i] == '-' {
            if src[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i != 0 {
            return Err(format!("expected sign at offset {i} in {s:?}"));
        }
        let start = i;
        while i < src.len() && src[i] != '+' && src[i] != '-' {
            i += 1;
        }
        let body: String = src[start..i].iter().collect();
        if body.is_empty() {
            return Err(format!("dangling sign in {s:?}"));
        }
        let (m, c) = parse_term(&body)?;
        terms.push((m, c * sign));
    }
    Ok(QtPolynomial::from_terms(terms))
}

fn parse_term(body: &str) -> Result<(Monomial, BigInt), String> {
    let mut coeff = BigInt::one();
    let mut m = Monomial::ONE;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(format!("empty factor in {body:?}"));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<u32>().map_err(|_| format!("bad exponent in {factor:?}"))?,
            ),
            None => (factor, 1),
        };
        match base {
            "q" => m.q = super::poly::exp_add(m.q, exp),
            "t" => m.t = super::poly::exp_add(m.t, exp),
            digits if digits.chars().all(|c| c.is_ascii_digit()) => {
                let v: BigInt = digits.parse().map_err(|_| format!("bad integer {digits:?}"))?;
                coeff *= num_traits::pow(v, exp as usize);
            }
            other => return Err(format!("unknown factor {other:?}")),
        }
    }
    if coeff.is_zero() {
        return Ok((Monomial::ONE, BigInt::zero()));
    }
    Ok((m, coeff))
}

/// Splits `num|den`; a missing bar means denominator one.
/// Accepts `num|den`, the display form `(num)/(den)`, or a bare polynomial.
pub fn split_fraction(s: &str) -> Result<(QtPolynomial, QtPolynomial), String> {
    let display = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.split_once(")/("));
    if let Some((n, d)) = display {
        return Ok((parse_polynomial(n)?, parse_polynomial(d)?));
    }
    match s.split_once('|') {
        Some((n, d)) => Ok((parse_polynomial(n)?, parse_polynomial(d)?)),
        None => Ok((parse_polynomial(s)?, QtPolynomial::one())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_loose_input() {
        let p = parse_polynomial(" t*q*2 + q^2 - 3 ").unwrap();
        assert_eq!(p.render(), "q^2 + 2*q*t - 3");
        assert_eq!(parse_polynomial("-q").unwrap().render(), "-q");
        assert_eq!(parse_polynomial("0").unwrap().render(), "0");
    }

    #[test]
    fn display_fractions() {
        let (n, d) = split_fraction("(-1)/(q - 1)").unwrap();
        assert_eq!((n.render(), d.render()), ("-1".to_string(), "q - 1".to_string()));
        assert!(split_fraction("(q)/(t").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("q+").is_err());
        assert!(parse_polynomial("x").is_err());
        assert!(parse_polynomial("q^-1").is_err());
    }
}
