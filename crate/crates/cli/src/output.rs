//! Output serializers. Everything here is a pure function of its input so
//! repeated runs produce identical bytes.

use std::fmt::Write;

use qsbai::{SweepResult, TheoremReport};
use serde::Serialize;

use crate::config::Format;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with exactly `digits` significant digits, in positional
/// notation when the exponent lies in `[-6, digits)`.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -6 || exp >= digits as i32 {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let figures: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp >= 0 {
        let (int, frac) = figures.split_at(exp as usize + 1);
        out.push_str(int);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-exp - 1) as usize));
        out.push_str(&figures);
    }
    out
}

fn prob(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `t,vertex,prob`, one row per step and arm.
pub fn sweep(result: &SweepResult, format: Format) -> String {
    match format {
        Format::Json => json(result),
        Format::Csv => {
            let mut out = String::from("t,vertex,prob\n");
            for (t, row) in result.curve.iter().enumerate() {
                for (w, &p) in row.iter().enumerate() {
                    writeln!(out, "{t},{w},{}", prob(p)).unwrap();
                }
            }
            out
        }
    }
}

pub fn report(r: &TheoremReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let family = serde_json::to_value(r.family).expect("serializable");
            format!(
                "family,best_arm,q_best,cluster_size,q_bar,theta,s,t_star,bound_rhs,p_observed,bound_satisfied\n\
                 {},{},{},{},{},{},{},{},{},{},{}\n",
                family.as_str().unwrap_or_default(),
                r.best_arm,
                prob(r.q_best),
                r.cluster_size,
                prob(r.q_bar),
                prob(r.theta),
                r.s,
                r.t_star,
                prob(r.bound_rhs),
                prob(r.p_observed),
                r.bound_satisfied
            )
        }
    }
}

/// One draw of the recommended arm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Draw {
    pub t: usize,
    pub seed: u64,
    pub arm: usize,
    pub probability: f64,
    pub distribution: Vec<f64>,
}

pub fn draw(d: &Draw, format: Format) -> String {
    match format {
        Format::Json => json(d),
        Format::Csv => format!("t,seed,arm,prob\n{},{},{},{}\n", d.t, d.seed, d.arm, prob(d.probability)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.7354123456789012, 12), "0.735412345679");
        assert_eq!(format_significant(1.0 / 30.0, 12), "0.0333333333333");
        assert_eq!(format_significant(1.0, 12), "1.00000000000");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(-2.5, 3), "-2.50");
        assert_eq!(format_significant(123.456, 4), "123.5");
        assert_eq!(format_significant(1.5e-9, 12), "1.50000000000e-9");
        assert_eq!(format_significant(0.99999999999999, 12), "1.00000000000");
    }
}
