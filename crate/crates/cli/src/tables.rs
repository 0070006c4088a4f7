//! `bounds` and `coeffs`: coefficient tables in JSON, CSV or aligned text.

use anyhow::{bail, Context, Result};
use gpbounds::bounds::{
    self, coefficient_table, finite_bound_trace, real, Coefficient, CoefficientKind, PairOption,
    Rational,
};
use serde::Serialize;

use super::{emit, to_json, BoundsArgs, CoeffsArgs, Format};

fn dec(x: &Rational) -> String {
    real::format_rational(x, real::DISPLAY_DIGITS)
}

fn kind_name(kind: CoefficientKind) -> &'static str {
    match kind {
        CoefficientKind::Baseline => "baseline",
        CoefficientKind::Cited => "cited",
        CoefficientKind::EvenRecurrence => "even-recurrence",
        CoefficientKind::OddPairing => "odd-pairing",
    }
}

#[derive(Serialize)]
struct BoundRow {
    r: usize,
    lower_bound: String,
    lower_bound_decimal: String,
    c_r: String,
    c_r_decimal: String,
    kind: &'static str,
    prior: String,
    closed_form: String,
}

#[derive(Serialize)]
struct TraceRow {
    k: u32,
    n: u64,
    bound: String,
    ratio: String,
    ratio_decimal: String,
}

fn check_range(from: usize, to: usize, min: usize) -> Result<()> {
    if from < min || to < from {
        bail!("need {min} <= --from <= --to, got {from}..{to}");
    }
    Ok(())
}

pub(crate) fn cmd_bounds(a: BoundsArgs) -> Result<u8> {
    if let Some(k) = a.trace {
        let r = a.r.context("--trace needs --r")?;
        if k > 40 {
            bail!("--trace is limited to K <= 40");
        }
        let rows: Vec<TraceRow> = finite_bound_trace(r, k)
            .into_iter()
            .map(|p| TraceRow {
                k: p.k,
                n: p.n,
                bound: p.bound.to_string(),
                ratio_decimal: dec(&p.ratio),
                ratio: p.ratio.to_string(),
            })
            .collect();
        let body = match a.out.format {
            Format::Json => to_json(&rows)?,
            Format::Csv => {
                let mut s = String::from("k,n,bound,ratio,ratio_decimal\n");
                for t in &rows {
                    s += &format!(
                        "{},{},{},{},{}\n",
                        t.k, t.n, t.bound, t.ratio, t.ratio_decimal
                    );
                }
                s
            }
            Format::Text => {
                let mut s = format!("{:>3} {:>8} {:>22}  {}\n", "k", "n", "bound", "ratio");
                for t in &rows {
                    s += &format!(
                        "{:>3} {:>8} {:>22}  {}\n",
                        t.k, t.n, t.bound, t.ratio_decimal
                    );
                }
                s
            }
        };
        emit(&a.out, &body)?;
        return Ok(0);
    }

    check_range(a.from, a.to, 2)?;
    let table = coefficient_table(a.to)?;
    let rows: Vec<BoundRow> = table
        .range(a.from..=a.to)
        .map(|(&r, c)| {
            let lower = bounds::lower_bound_coefficient(r);
            BoundRow {
                r,
                lower_bound_decimal: dec(&lower),
                lower_bound: lower.to_string(),
                c_r: c.value.to_string(),
                c_r_decimal: dec(&c.value),
                kind: kind_name(c.kind),
                prior: real::format_sig(
                    &bounds::prior_coefficient(r).to_real(),
                    real::DISPLAY_DIGITS,
                ),
                closed_form: real::format_sig(
                    &bounds::closed_form_coefficient(r).to_real(),
                    real::DISPLAY_DIGITS,
                ),
            }
        })
        .collect();
    let body = match a.out.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from(
                "r,lower_bound,lower_bound_decimal,c_r,c_r_decimal,kind,prior,closed_form\n",
            );
            for b in &rows {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    b.r,
                    b.lower_bound,
                    b.lower_bound_decimal,
                    b.c_r,
                    b.c_r_decimal,
                    b.kind,
                    b.prior,
                    b.closed_form
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>4} {:>18} {:>18} {:>16} {:>18} {:>18}\n",
                "r", "lower", "c_r", "kind", "prior", "closed form"
            );
            for b in &rows {
                s += &format!(
                    "{:>4} {:>18} {:>18} {:>16} {:>18} {:>18}\n",
                    b.r, b.lower_bound_decimal, b.c_r_decimal, b.kind, b.prior, b.closed_form
                );
            }
            s
        }
    };
    emit(&a.out, &body)?;
    Ok(0)
}

#[derive(Serialize)]
struct ChoiceRow {
    t: usize,
    option: PairOption,
    product_decimal: Option<String>,
}

#[derive(Serialize)]
struct CoeffRow {
    r: usize,
    value: String,
    decimal: String,
    kind: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pair_choices: Vec<ChoiceRow>,
}

fn coeff_row(c: &Coefficient) -> CoeffRow {
    CoeffRow {
        r: c.r,
        value: c.value.to_string(),
        decimal: dec(&c.value),
        kind: kind_name(c.kind),
        pair_choices: c
            .pair_choices
            .iter()
            .map(|p| ChoiceRow {
                t: p.t,
                option: p.option,
                product_decimal: p.product_value.as_ref().map(dec),
            })
            .collect(),
    }
}

fn product_pairs(row: &CoeffRow) -> String {
    row.pair_choices
        .iter()
        .filter(|p| p.option == PairOption::Product)
        .map(|p| p.t.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub(crate) fn cmd_coeffs(a: CoeffsArgs) -> Result<u8> {
    check_range(a.from, a.to, 1)?;
    let table = coefficient_table(a.to)?;
    let rows: Vec<CoeffRow> = table
        .range(a.from..=a.to)
        .map(|(_, c)| coeff_row(c))
        .collect();
    let body = match a.out.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("r,c_r,c_r_decimal,kind,product_pairs\n");
            for c in &rows {
                s += &format!(
                    "{},{},{},{},{}\n",
                    c.r,
                    c.value,
                    c.decimal,
                    c.kind,
                    product_pairs(c)
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>4} {:>18} {:>16}  {}\n",
                "r", "c_r", "kind", "product pairs"
            );
            for c in &rows {
                s += &format!(
                    "{:>4} {:>18} {:>16}  {}\n",
                    c.r,
                    c.decimal,
                    c.kind,
                    product_pairs(c)
                );
            }
            s
        }
    };
    emit(&a.out, &body)?;
    Ok(0)
}
