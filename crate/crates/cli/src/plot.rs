//! CSV sample files for a tail function next to the regulator `u(t) = t`.

use std::io::{self, Write};

use rucert_core::{Rational, TailFunction};

/// Significant digits in the decimal columns.
pub const DIGITS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotRow {
    pub t: Rational,
    pub f: Rational,
    pub u: Rational,
}

/// The exact decimal with 12 significant digits closest to `x > 0`.
fn snap(x: f64) -> Rational {
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let m: Rational = digits.parse().expect("digit run");
    let shift = exp - 11;
    let ten = Rational::integer(10);
    if shift >= 0 {
        m * ten.pow(shift as u32)
    } else {
        m / ten.pow((-shift) as u32)
    }
}

/// Sample abscissae in increasing order.
///
/// `Linear` spaces `samples` points evenly over `[0, 1]`. `Log` spaces them
/// geometrically over `[b_{depth+1}, 1]`, with interior points rounded to
/// 12 significant digits so the grid is exact and reproducible.
pub fn sample_points(f: &TailFunction, samples: usize, scale: Scale, depth: u32) -> Vec<Rational> {
    assert!(samples >= 2);
    let last = (samples - 1) as i64;
    match scale {
        Scale::Linear => (0..=last).map(|i| Rational::new(i, last)).collect(),
        Scale::Log => {
            let lo = f.params().b(depth + 1);
            let ln_lo = lo.to_f64().ln();
            let mut ts: Vec<Rational> = (0..=last)
                .map(|i| match i {
                    0 => lo.clone(),
                    i if i == last => Rational::one(),
                    i => {
                        let t = snap((ln_lo * (1.0 - i as f64 / last as f64)).exp());
                        t.max(lo.clone()).min(Rational::one())
                    }
                })
                .collect();
            ts.dedup();
            ts
        }
    }
}

pub fn plot_rows(f: &TailFunction, samples: usize, scale: Scale, depth: u32) -> Vec<PlotRow> {
    sample_points(f, samples, scale, depth)
        .into_iter()
        .map(|t| PlotRow {
            f: f.eval(&t).expect("samples lie in [0, 1]"),
            u: t.clone(),
            t,
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[PlotRow], mut out: W) -> io::Result<()> {
    writeln!(out, "t,f,u")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{}",
            r.t.to_decimal(DIGITS),
            r.f.to_decimal(DIGITS),
            r.u.to_decimal(DIGITS)
        )?;
    }
    out.flush()
}

/// Samples `f` and writes the CSV to `out`.
pub fn emit_plot<W: Write>(
    f: &TailFunction,
    samples: usize,
    scale: Scale,
    depth: u32,
    out: W,
) -> io::Result<()> {
    write_csv(&plot_rows(f, samples, scale, depth), out)
}
