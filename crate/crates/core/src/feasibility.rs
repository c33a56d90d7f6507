//! Feasibility over `ℝⁿ₊`, `(ℝ*)ⁿ` and `ℝⁿ` for supports with at most
//! `d + 2` points.
//!
//! Every input is first rewritten as an honest polynomial by a unimodular
//! monomial change. Simplices (`d + 1` terms) are decided by signs and
//! parity. Circuits (`d + 2` terms) over `ℝⁿ₊` follow the circuit sign test
//! below; over `(ℝ*)ⁿ` each orthant is reflected onto `ℝⁿ₊`, and over `ℝⁿ`
//! each coordinate subspace is handled as a smaller nonzero-orthant problem.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::arith::{product_compare_with_stats, CompareStats, SignedProduct};
use crate::circuit::{
    adisc_sign, adisc_vanishes, classify_circuit, signs_coherent, CircuitKind, DiscriminantSign,
};
use crate::lattice::{affine_dimension, canonical_simplex_form, reduce_to_honest};
use crate::poly::SparsePolynomial;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    PositiveOrthant,
    NonzeroOrthants,
    AllReal,
}

/// The clause that settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    AllSameSign,
    SimplexSignMix,
    ParityOdd,
    /// Same-sign simplex whose exponent differences are all even.
    ParityEven,
    CircuitProductStrict,
    CircuitProductEqualDegenerate,
    CircuitDegeneratePoint,
    /// Mixed signs but `b` and `c` do not isolate the same negative entry.
    CircuitSignPattern,
    SubspaceRestriction,
    OriginRoot,
    /// Every orthant or subspace branch was empty.
    NoBranchFeasible,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AllSameSign => "AllSameSign",
            Rule::SimplexSignMix => "SimplexSignMix",
            Rule::ParityOdd => "ParityOdd",
            Rule::ParityEven => "ParityEven",
            Rule::CircuitProductStrict => "CircuitProductStrict",
            Rule::CircuitProductEqualDegenerate => "CircuitProductEqualDegenerate",
            Rule::CircuitDegeneratePoint => "CircuitDegeneratePoint",
            Rule::CircuitSignPattern => "CircuitSignPattern",
            Rule::SubspaceRestriction => "SubspaceRestriction",
            Rule::OriginRoot => "OriginRoot",
            Rule::NoBranchFeasible => "NoBranchFeasible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyNote {
    EmptySet,
    DiffeotopicToHalfspace,
    SinglePoint,
    SmoothNonempty,
}

impl TopologyNote {
    pub fn name(self) -> &'static str {
        match self {
            TopologyNote::EmptySet => "EmptySet",
            TopologyNote::DiffeotopicToHalfspace => "DiffeotopicToHalfspace",
            TopologyNote::SinglePoint => "SinglePoint",
            TopologyNote::SmoothNonempty => "SmoothNonempty",
        }
    }
}

/// Evidence behind a verdict. Fields not relevant to the rule stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    /// Number of positive non-base coefficients in the canonical simplex form.
    pub ell: Option<usize>,
    /// Circuit vector of the honest reduction.
    pub b: Option<Vec<BigInt>>,
    pub beta: Option<BigInt>,
    pub interior_index: Option<usize>,
    /// Left side against right side of the circuit product inequality.
    pub comparison: Option<Ordering>,
    pub compare_stats: Option<CompareStats>,
    pub discriminant: Option<DiscriminantSign>,
    /// Per original variable: `1`, `-1`, or `0` for a zeroed coordinate.
    pub orthant: Option<Vec<i8>>,
    /// Variables set to zero.
    pub restricted: Option<Vec<usize>>,
    /// Dimension after the honest reduction, when smaller than `n`.
    pub reduced_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub rule: Rule,
    pub certificate: Certificate,
    pub topology_note: Option<TopologyNote>,
}

impl FeasibilityVerdict {
    fn new(feasible: bool, rule: Rule) -> Self {
        FeasibilityVerdict {
            feasible,
            rule,
            certificate: Certificate::default(),
            topology_note: None,
        }
    }

    fn with_note(mut self, note: Option<TopologyNote>) -> Self {
        self.topology_note = note;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Most variables the orthant and subspace enumerations may range over.
    pub cap_n: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { cap_n: 12 }
    }
}

fn check_simplex(f: &SparsePolynomial) -> Result<(), Error> {
    let n = f.nvars();
    if f.len() != n + 1 {
        return Err(Error::WrongCardinality {
            expected: n + 1,
            found: f.len(),
        });
    }
    let d = affine_dimension(&f.support());
    if d != n {
        return Err(Error::NotHonest {
            dimension: d,
            variables: n,
        });
    }
    Ok(())
}

fn check_circuit(f: &SparsePolynomial) -> Result<(), Error> {
    let n = f.nvars();
    if f.len() != n + 2 {
        return Err(Error::WrongCardinality {
            expected: n + 2,
            found: f.len(),
        });
    }
    let d = affine_dimension(&f.support());
    if d != n {
        return Err(Error::NotHonest {
            dimension: d,
            variables: n,
        });
    }
    Ok(())
}

pub fn feas_pos_simplex(f: &SparsePolynomial) -> Result<FeasibilityVerdict, Error> {
    check_simplex(f)?;
    let form = canonical_simplex_form(f)?;
    let mut v = if f.coefficients_same_sign() {
        FeasibilityVerdict::new(false, Rule::AllSameSign).with_note(Some(TopologyNote::EmptySet))
    } else {
        FeasibilityVerdict::new(true, Rule::SimplexSignMix)
            .with_note(Some(TopologyNote::DiffeotopicToHalfspace))
    };
    v.certificate.ell = Some(form.ell);
    Ok(v)
}

/// Sign and parity rule for any support of `d + 1` points.
fn star_simplex_rule(f: &SparsePolynomial) -> FeasibilityVerdict {
    let n = f.nvars();
    if !f.coefficients_same_sign() {
        let mut v = FeasibilityVerdict::new(true, Rule::SimplexSignMix);
        v.certificate.orthant = Some(alloc::vec![1; n]);
        return v;
    }
    let terms = f.terms();
    let base = &terms[0].exponent.0;
    for t in &terms[1..] {
        for k in 0..n {
            if (t.exponent.0[k] - base[k]).rem_euclid(2) == 1 {
                let mut orthant = alloc::vec![1i8; n];
                orthant[k] = -1;
                let mut v = FeasibilityVerdict::new(true, Rule::ParityOdd);
                v.certificate.orthant = Some(orthant);
                return v;
            }
        }
    }
    FeasibilityVerdict::new(false, Rule::ParityEven)
}

pub fn feas_star_simplex(f: &SparsePolynomial) -> Result<FeasibilityVerdict, Error> {
    check_simplex(f)?;
    Ok(star_simplex_rule(f))
}

pub fn feas_real_simplex(f: &SparsePolynomial) -> Result<FeasibilityVerdict, Error> {
    check_simplex(f)?;
    decide_real(f, &DecideOptions::default())
}

/// `b` and `c` after the sign normalization and reordering of the circuit
/// test: `b[..j] > 0`, `b[j] < 0`, `b[j+1..] = 0`, `c[j] < 0` and every
/// other `c` positive. `order[k]` is the original index now at `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedCircuit {
    pub b: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub order: Vec<usize>,
    pub j: usize,
}

/// `None` when `b` (up to sign) has no unique negative entry, or `c` (up to
/// sign) does not have its unique negative entry at the same place.
pub fn normalize_circuit(b: &[BigInt], c: &[BigInt]) -> Option<NormalizedCircuit> {
    let negatives: Vec<usize> = (0..b.len()).filter(|&i| b[i].is_negative()).collect();
    let positives: Vec<usize> = (0..b.len()).filter(|&i| b[i].is_positive()).collect();
    let j = if negatives.len() == 1 {
        negatives[0]
    } else if positives.len() == 1 {
        positives[0]
    } else {
        return None;
    };
    let cj = c[j].sign();
    if c.iter()
        .enumerate()
        .any(|(i, ci)| i != j && ci.sign() == cj)
    {
        return None;
    }
    let flip_b = b[j].is_positive();
    let flip_c = c[j].is_positive();
    let nb: Vec<BigInt> = b
        .iter()
        .map(|x| if flip_b { -x } else { x.clone() })
        .collect();
    let nc: Vec<BigInt> = c
        .iter()
        .map(|x| if flip_c { -x } else { x.clone() })
        .collect();
    let mut order: Vec<usize> = (0..b.len()).filter(|&i| nb[i].is_positive()).collect();
    let jpos = order.len();
    order.push(j);
    order.extend((0..b.len()).filter(|&i| nb[i].is_zero()));
    Some(NormalizedCircuit {
        b: order.iter().map(|&i| nb[i].clone()).collect(),
        c: order.iter().map(|&i| nc[i].clone()).collect(),
        order,
        j: jpos,
    })
}

/// `(|b_j|^{|b_j|}·Π cᵢ^{bᵢ}, |c_j|^{|b_j|}·Π bᵢ^{bᵢ})` over `i < j`.
fn circuit_products(nc: &NormalizedCircuit) -> (SignedProduct, SignedProduct) {
    let j = nc.j;
    let bj: BigUint = nc.b[j].magnitude().clone();
    let mut lhs = SignedProduct::one();
    let mut rhs = SignedProduct::one();
    lhs.push(BigInt::from(bj.clone()), bj.clone())
        .expect("b_j ≠ 0");
    rhs.push(-&nc.c[j], bj).expect("c_j ≠ 0");
    for i in 0..j {
        let e = nc.b[i].magnitude().clone();
        lhs.push(nc.c[i].clone(), e.clone()).expect("c_i ≠ 0");
        rhs.push(nc.b[i].clone(), e).expect("b_i ≠ 0");
    }
    (lhs, rhs)
}

pub fn feas_pos_circuit(f: &SparsePolynomial) -> Result<FeasibilityVerdict, Error> {
    check_circuit(f)?;
    let data = classify_circuit(&f.support())?;
    let degenerate = data.kind == CircuitKind::DegenerateCircuit;
    let c = f.coefficients();
    let base_cert = Certificate {
        b: Some(data.b.clone()),
        beta: Some(data.beta.clone()),
        interior_index: data.interior_index,
        ..Certificate::default()
    };

    if f.coefficients_same_sign() {
        let mut v = FeasibilityVerdict::new(false, Rule::AllSameSign)
            .with_note(Some(TopologyNote::EmptySet));
        v.certificate = base_cert;
        return Ok(v);
    }

    let Some(nc) = normalize_circuit(&data.b, &c) else {
        let mut v = FeasibilityVerdict::new(true, Rule::CircuitSignPattern);
        v.certificate = base_cert;
        if !degenerate {
            let singular = signs_coherent(&data.b, &c) && adisc_vanishes(f)?;
            if !singular {
                v.topology_note = Some(TopologyNote::SmoothNonempty);
            }
            v.certificate.discriminant = Some(adisc_sign(f, true)?);
        }
        return Ok(v);
    };

    let (lhs, rhs) = circuit_products(&nc);
    let (ord, stats) = product_compare_with_stats(&lhs, &rhs);
    let (feasible, rule, note) = match (ord, degenerate) {
        (Ordering::Equal, true) => (
            false,
            Rule::CircuitProductEqualDegenerate,
            Some(TopologyNote::EmptySet),
        ),
        (Ordering::Greater, _) => (
            false,
            Rule::CircuitProductStrict,
            Some(TopologyNote::EmptySet),
        ),
        (Ordering::Equal, false) => (
            true,
            Rule::CircuitDegeneratePoint,
            Some(TopologyNote::SinglePoint),
        ),
        (Ordering::Less, false) => (
            true,
            Rule::CircuitProductStrict,
            Some(TopologyNote::SmoothNonempty),
        ),
        (Ordering::Less, true) => (true, Rule::CircuitProductStrict, None),
    };
    let mut v = FeasibilityVerdict::new(feasible, rule).with_note(note);
    v.certificate = base_cert;
    v.certificate.comparison = Some(ord);
    v.certificate.compare_stats = Some(stats);
    if !degenerate {
        v.certificate.discriminant = Some(adisc_sign(f, true)?);
    }
    Ok(v)
}

pub fn feas_star_circuit(
    f: &SparsePolynomial,
    opts: &DecideOptions,
) -> Result<FeasibilityVerdict, Error> {
    check_circuit(f)?;
    decide_nonzero(f, opts)
}

pub fn feas_real_circuit(
    f: &SparsePolynomial,
    opts: &DecideOptions,
) -> Result<FeasibilityVerdict, Error> {
    check_circuit(f)?;
    decide_real(f, opts)
}

pub fn decide(f: &SparsePolynomial, domain: Domain) -> Result<FeasibilityVerdict, Error> {
    decide_with(f, domain, &DecideOptions::default())
}

pub fn decide_with(
    f: &SparsePolynomial,
    domain: Domain,
    opts: &DecideOptions,
) -> Result<FeasibilityVerdict, Error> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial".into()));
    }
    let d = affine_dimension(&f.support());
    if f.len() > d + 2 {
        return Err(Error::UnsupportedSparsity {
            terms: f.len(),
            dimension: d,
        });
    }
    match domain {
        Domain::PositiveOrthant => decide_positive(f),
        Domain::NonzeroOrthants => decide_nonzero(f, opts),
        Domain::AllReal => decide_real(f, opts),
    }
}

fn decide_positive(f: &SparsePolynomial) -> Result<FeasibilityVerdict, Error> {
    if f.len() == 1 {
        return Ok(FeasibilityVerdict::new(false, Rule::AllSameSign)
            .with_note(Some(TopologyNote::EmptySet)));
    }
    let r = reduce_to_honest(f)?;
    let (m, d) = (r.g.len(), r.dimension);
    let mut v = if m == d + 1 {
        feas_pos_simplex(&r.g)?
    } else if m == d + 2 {
        feas_pos_circuit(&r.g)?
    } else {
        return Err(Error::UnsupportedSparsity {
            terms: m,
            dimension: d,
        });
    };
    if d < f.nvars() {
        v.certificate.reduced_dimension = Some(d);
    }
    Ok(v)
}

/// `f(ε₁x₁, …, εₙxₙ)` with `εₖ = −1` for the listed variables.
fn twist(f: &SparsePolynomial, negate: &[usize]) -> SparsePolynomial {
    let terms = f.terms().iter().map(|t| {
        let odd = negate
            .iter()
            .filter(|&&k| t.exponent.0[k].rem_euclid(2) == 1)
            .count();
        let c = if odd % 2 == 1 {
            -&t.coeff
        } else {
            t.coeff.clone()
        };
        (c, t.exponent.clone())
    });
    SparsePolynomial::new(f.nvars(), terms).expect("same shape")
}

fn decide_nonzero(f: &SparsePolynomial, opts: &DecideOptions) -> Result<FeasibilityVerdict, Error> {
    let n = f.nvars();
    if f.len() == 1 {
        return Ok(FeasibilityVerdict::new(false, Rule::AllSameSign));
    }
    let d = affine_dimension(&f.support());
    if f.len() == d + 1 {
        return Ok(star_simplex_rule(f));
    }
    if f.len() != d + 2 {
        return Err(Error::UnsupportedSparsity {
            terms: f.len(),
            dimension: d,
        });
    }
    let odd: Vec<usize> = (0..n)
        .filter(|&k| f.terms().iter().any(|t| t.exponent.0[k].rem_euclid(2) == 1))
        .collect();
    if odd.len() > opts.cap_n {
        return Err(Error::ResourceLimit(alloc::format!(
            "{} sign-relevant variables exceed the cap of {}",
            odd.len(),
            opts.cap_n
        )));
    }
    let masks: Vec<u64> = (0..1u64 << odd.len()).collect();
    let found = first_feasible(masks, |mask| {
        let negate: Vec<usize> = odd
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &k)| k)
            .collect();
        let mut v = decide_positive(&twist(f, &negate))?;
        if !v.feasible {
            return Ok(None);
        }
        let mut orthant = alloc::vec![1i8; n];
        for k in negate {
            orthant[k] = -1;
        }
        v.certificate.orthant = Some(orthant);
        v.topology_note = None;
        Ok(Some(v))
    })?;
    Ok(found.unwrap_or_else(|| FeasibilityVerdict::new(false, Rule::NoBranchFeasible)))
}

/// Terms of `f` that survive setting the listed variables to zero.
fn restrict(f: &SparsePolynomial, zeroed: &[usize]) -> SparsePolynomial {
    let terms = f
        .terms()
        .iter()
        .filter(|t| zeroed.iter().all(|&k| t.exponent.0[k] == 0))
        .map(|t| (t.coeff.clone(), t.exponent.clone()));
    SparsePolynomial::new(f.nvars(), terms).expect("same shape")
}

fn decide_real(f: &SparsePolynomial, opts: &DecideOptions) -> Result<FeasibilityVerdict, Error> {
    if f.has_negative_exponents() {
        return Err(Error::InvalidInput(
            "real feasibility needs nonnegative exponents".into(),
        ));
    }
    let occ = f.occurring_variables();
    if occ.len() > opts.cap_n {
        return Err(Error::ResourceLimit(alloc::format!(
            "{} variables exceed the cap of {}",
            occ.len(),
            opts.cap_n
        )));
    }
    let full = (1u64 << occ.len()) - 1;
    let mut masks: Vec<u64> = (0..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let found = first_feasible(masks, |mask| {
        let zeroed: Vec<usize> = occ
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &k)| k)
            .collect();
        let g = restrict(f, &zeroed);
        let mut v = if g.is_zero() {
            let rule = if mask == full {
                Rule::OriginRoot
            } else {
                Rule::SubspaceRestriction
            };
            let mut v = FeasibilityVerdict::new(true, rule);
            v.certificate.orthant = Some(alloc::vec![1; f.nvars()]);
            v
        } else {
            let v = decide_nonzero(&g, opts)?;
            if !v.feasible {
                return Ok(None);
            }
            v
        };
        let orthant = v
            .certificate
            .orthant
            .get_or_insert_with(|| alloc::vec![1; f.nvars()]);
        for &k in &zeroed {
            orthant[k] = 0;
        }
        v.certificate.restricted = Some(zeroed);
        Ok(Some(v))
    })?;
    Ok(found.unwrap_or_else(|| FeasibilityVerdict::new(false, Rule::NoBranchFeasible)))
}

/// First branch, in input order, that reports a verdict; errors propagate.
#[cfg(not(feature = "parallel"))]
fn first_feasible<F>(items: Vec<u64>, branch: F) -> Result<Option<FeasibilityVerdict>, Error>
where
    F: Fn(u64) -> Result<Option<FeasibilityVerdict>, Error>,
{
    for item in items {
        if let Some(v) = branch(item)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[cfg(feature = "parallel")]
fn first_feasible<F>(items: Vec<u64>, branch: F) -> Result<Option<FeasibilityVerdict>, Error>
where
    F: Fn(u64) -> Result<Option<FeasibilityVerdict>, Error> + Sync + Send,
{
    use rayon::prelude::*;
    items
        .into_par_iter()
        .find_map_first(|item| branch(item).transpose())
        .transpose()
}
