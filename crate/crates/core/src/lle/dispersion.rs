//! Plane-wave symbol of the operator and its determinant.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::verify::{Check, VerificationReport};
use super::LleSpec;
use crate::error::LleError;
use crate::exec::Exec;
use crate::linalg::determinant;
use crate::scalar::{rat, Gauss, Scalar};

/// Symbol matrix at `(E, k)` (`dt -> -iE`, `dk -> i k_k`).
pub fn symbol_matrix(spec: &LleSpec, energy: &Gauss, momenta: &[Gauss]) -> Result<Vec<Vec<Gauss>>, LleError> {
    if !spec.is_free() {
        return Err(LleError::HasPotential);
    }
    let d = spec.build_operator();
    let n = d.dim();
    let mut rows = vec![vec![Gauss::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let s: Scalar = d.get(i, j).symbol_eval(energy, momenta)?;
            *cell = s
                .constant()
                .ok_or_else(|| LleError::Invalid("symbol depends on parameters".into()))?;
        }
    }
    Ok(rows)
}

pub fn symbol_determinant(spec: &LleSpec, energy: &Gauss, momenta: &[Gauss]) -> Result<Gauss, LleError> {
    Ok(determinant(symbol_matrix(spec, energy, momenta)?))
}

fn fmt_gauss(c: &Gauss) -> String {
    Scalar::from_gauss(c.clone()).to_string()
}

fn pow(base: &Gauss, e: usize) -> Gauss {
    (0..e).fold(Gauss::one(), |acc, _| &acc * base)
}

/// Deterministic momenta for sample `s`; the first component `+-(s+1)`
/// keeps the samples distinct.
fn sample_momenta(s: usize, d: usize) -> Vec<BigRational> {
    (0..d)
        .map(|j| {
            if j == 0 {
                let m = s as i64 + 1;
                rat(if s.is_multiple_of(2) { m } else { -m }, 1)
            } else {
                let v = ((s + 1) * (j + 2) + j) % 7;
                rat(v as i64 - 3, 1)
            }
        })
        .collect()
}

/// Nonzero off-shell shift for sample `s`.
fn shift(s: usize) -> BigRational {
    const SHIFTS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (5, 3)];
    let (a, b) = SHIFTS[s % SHIFTS.len()];
    rat(a * (1 + (s / SHIFTS.len()) as i64), b)
}

/// Checks `det symbol(E, k) = c (E - |k|^2)^(n/2)` with `|c| = 1`: the
/// determinant vanishes at `max(5, n/2 + 2)` on-shell samples and matches
/// the model with one common `c` at as many off-shell samples.
pub fn dispersion_check(spec: &LleSpec, exec: Exec) -> Result<VerificationReport, LleError> {
    if !spec.is_free() {
        return Err(LleError::HasPotential);
    }
    let n = spec.n();
    let d = spec.d();
    let count = std::cmp::max(5, n / 2 + 2);
    let points: Vec<(bool, usize)> = (0..count)
        .map(|s| (true, s))
        .chain((0..count).map(|s| (false, s)))
        .collect();
    let evaluated = exec.map(&points, |&(on_shell, s)| {
        let k = sample_momenta(s, d);
        let k2 = k.iter().fold(BigRational::zero(), |acc, v| acc + v * v);
        let delta = if on_shell { BigRational::zero() } else { shift(s) };
        let energy = Gauss::new(&k2 + &delta, BigRational::zero());
        let momenta: Vec<Gauss> = k.iter().map(|v| Gauss::new(v.clone(), BigRational::zero())).collect();
        symbol_determinant(spec, &energy, &momenta).map(|det| (on_shell, energy, momenta, delta, det))
    });
    let mut report = VerificationReport::new(spec.name());
    let mut constant: Option<Gauss> = None;
    for item in evaluated {
        let (on_shell, energy, momenta, delta, det) = item?;
        let ks: Vec<String> = momenta.iter().map(fmt_gauss).collect();
        let at = format!("E = {}, k = ({})", fmt_gauss(&energy), ks.join(", "));
        if on_shell {
            report.checks.push(Check::new(
                format!("on-shell {at}"),
                det.is_zero(),
                format!("det = {}", fmt_gauss(&det)),
            ));
            continue;
        }
        let model = pow(&Gauss::new(delta, BigRational::zero()), n / 2);
        let c = &det / &model;
        let c = constant.get_or_insert(c).clone();
        let expected = &c * &model;
        report.checks.push(Check::new(
            format!("off-shell {at}"),
            !det.is_zero() && det == expected,
            format!("det = {}, model = {}", fmt_gauss(&det), fmt_gauss(&expected)),
        ));
    }
    if let Some(c) = constant {
        let modulus = &c.re * &c.re + &c.im * &c.im;
        report.checks.push(Check::new(
            "unit constant",
            modulus.is_one(),
            format!("det = {} * (E - |k|^2)^{}", fmt_gauss(&c), n / 2),
        ));
    }
    Ok(report)
}
