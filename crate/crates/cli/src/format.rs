use nilcx::exalg::fmt_rational;
use nilcx::{GaussianRational as C, Matrix};
use num_traits::{One, Signed, Zero};

/// `Σ c_k · <prefix>k`, with complex coefficients in parentheses.
pub fn combination(v: &[C], prefix: &str) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let name = format!("{prefix}{}", k + 1);
        let (negative, body) = if c.im.is_zero() {
            let m = c.re.abs();
            (
                c.re.is_negative(),
                if m.is_one() {
                    name
                } else {
                    format!("{}*{name}", fmt_rational(&m))
                },
            )
        } else if c.re.is_zero() {
            let m = c.im.abs();
            let coeff = if m.is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rational(&m))
            };
            (c.im.is_negative(), format!("{coeff}*{name}"))
        } else {
            (false, format!("({c})*{name}"))
        };
        let sign = match (out.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn gaussians(v: &[C]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| gaussians(m.row(r))).collect()
}

pub fn bracketed(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

pub fn dims(v: &[usize]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}
