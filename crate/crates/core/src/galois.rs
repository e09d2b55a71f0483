//! Monodromy of a cover, compared against `PSL_2(F_8)` through Frobenius
//! cycle types.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use crate::certificate::Certificate;
use crate::cover::{T, X};
use crate::exact::{format_rational, Poly, Rational};
use crate::finite_field::{factor_degrees, CycleType, PrimeField, ReducedFamily, F8};
use crate::rng::substream;
use crate::{Error, Result};

/// A permutation of `0..9`; points `0..8` are `a in F_8`, `8` is infinity.
pub type Perm = [u8; 9];

const INF: u8 = 8;

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    std::array::from_fn(|i| a[b[i] as usize])
}

pub fn cycle_type(p: &Perm) -> CycleType {
    let mut seen = [false; 9];
    let mut parts = Vec::new();
    for s in 0..9 {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

fn mobius(m: [F8; 4], z: u8) -> u8 {
    let [a, b, c, d] = m;
    let (num, den) = if z == INF {
        (a, c)
    } else {
        let z = F8::new(z);
        (a * z + b, c * z + d)
    };
    match den.inv() {
        None => INF,
        Some(i) => (num * i).bits(),
    }
}

/// The group with its cycle-type statistics.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    elements: Vec<Perm>,
    table: BTreeMap<CycleType, usize>,
}

/// `SL_2(F_8)` acting on the nine points of `P^1(F_8)`; the centre is
/// trivial in characteristic 2.
pub fn enumerate_psl2_f8() -> GroupOracle {
    let mut set = BTreeSet::new();
    for a in F8::all() {
        for b in F8::all() {
            for c in F8::all() {
                for d in F8::all() {
                    if a * d + b * c != F8::ONE {
                        continue;
                    }
                    let p: Perm = std::array::from_fn(|z| mobius([a, b, c, d], z as u8));
                    set.insert(p);
                }
            }
        }
    }
    GroupOracle::from_elements(set.into_iter().collect())
}

impl GroupOracle {
    pub fn from_elements(elements: Vec<Perm>) -> Self {
        let mut table = BTreeMap::new();
        for e in &elements {
            *table.entry(cycle_type(e)).or_insert(0) += 1;
        }
        GroupOracle { elements, table }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn table(&self) -> &BTreeMap<CycleType, usize> {
        &self.table
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Composition of random pairs stays in the set.
    pub fn spot_check_closure(&self, pairs: usize, seed: u64) -> bool {
        let mut rng = substream(seed, 0);
        (0..pairs).all(|_| {
            let a = &self.elements[rng.gen_range(0..self.order())];
            let b = &self.elements[rng.gen_range(0..self.order())];
            self.contains(&compose(a, b))
        })
    }

    pub fn order_counts(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry(cycle_type(e).order()).or_insert(0) += 1;
        }
        out
    }

    /// Number of distinct cyclic subgroups generated by elements of order `n`.
    pub fn cyclic_subgroups_of_order(&self, n: u64) -> usize {
        let mut subgroups = BTreeSet::new();
        for e in &self.elements {
            if cycle_type(e).order() != n {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut x = *e;
            for _ in 0..n {
                members.insert(x);
                x = compose(&x, e);
            }
            subgroups.insert(members);
        }
        subgroups.len()
    }

    /// Counts per order derived from the numbers of cyclic subgroups of
    /// orders 7 and 9, compared with the enumeration.
    pub fn sylow_consistent(&self) -> bool {
        let n7 = self.cyclic_subgroups_of_order(7);
        let n9 = self.cyclic_subgroups_of_order(9);
        let got = self.order_counts();
        let c = |k: u64| got.get(&k).copied().unwrap_or(0);
        let derived7 = 6 * n7;
        let derived9 = 6 * n9;
        let derived3 = 2 * n9;
        let derived2 = self.order() - 1 - derived7 - derived9 - derived3;
        c(1) == 1 && c(7) == derived7 && c(9) == derived9 && c(3) == derived3 && c(2) == derived2
    }
}

/// Frobenius cycle types observed at random specializations mod `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingReport {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub samples: usize,
    pub skipped: usize,
    pub per_prime: BTreeMap<u64, BTreeMap<CycleType, usize>>,
    pub skipped_per_prime: BTreeMap<u64, usize>,
}

impl SamplingReport {
    pub fn histogram(&self) -> BTreeMap<CycleType, usize> {
        let mut out = BTreeMap::new();
        for h in self.per_prime.values() {
            for (k, v) in h {
                *out.entry(k.clone()).or_insert(0) += v;
            }
        }
        out
    }

    pub fn total(&self) -> usize {
        self.histogram().values().sum()
    }

    pub fn attempts(&self) -> usize {
        self.total() + self.skipped
    }

    /// The report in its JSON exchange form.
    pub fn to_json(&self, verdict: Option<&str>) -> serde_json::Value {
        let hist: BTreeMap<String, usize> = self.histogram().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        serde_json::json!({
            "seed": self.seed,
            "primes": self.primes,
            "samples": self.total(),
            "skipped": self.skipped,
            "histogram": hist,
            "verdict": verdict,
        })
    }
}

/// Whether `m` splits into distinct linear factors mod `p`.
pub fn splits_completely(m: &Poly, field: &PrimeField) -> Result<bool> {
    let v = m.univariate_var()?.ok_or(Error::DegreeTooSmall { needed: 1, got: 0 })?;
    let Some(r) = field.reduce(&m.to_upoly(&v)?) else { return Ok(false) };
    if r.deg() != m.degree_in(&v) {
        return Ok(false);
    }
    let ring = field.ring();
    if ring.gcd(&r, &ring.derivative(&r)).deg() > 0 {
        return Ok(false);
    }
    Ok(factor_degrees(field, &r).iter().all(|&d| d == 1))
}

fn sample_prime(family: &Poly, p: u64, samples: usize, seed: u64) -> Result<(BTreeMap<CycleType, usize>, usize)> {
    let field = PrimeField::new(p)?;
    let red = ReducedFamily::new(family, T, X, field)?;
    let mut rng = substream(seed, p);
    let mut hist = BTreeMap::new();
    let mut got = 0;
    let mut skipped = 0;
    while got < samples {
        let t0 = rng.gen_range(0..p);
        match red.pattern_at(t0) {
            Ok(c) => {
                *hist.entry(c).or_insert(0) += 1;
                got += 1;
            }
            Err(Error::RamifiedSpecialization) => {
                skipped += 1;
                if skipped > samples {
                    return Err(Error::BadPrime { prime: p, reason: "more than half of the specializations are ramified".into() });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok((hist, skipped))
}

/// Samples `samples_per_prime` unramified specializations at each prime,
/// one thread per prime. When `constant_field` is given, every prime must
/// split it completely (otherwise Frobenius also acts on constants).
pub fn sample_cycle_types(
    family: &Poly,
    primes: &[u64],
    samples_per_prime: usize,
    seed: u64,
    constant_field: Option<&Poly>,
) -> Result<SamplingReport> {
    if samples_per_prime == 0 {
        return Err(Error::Precondition("samples_per_prime must be positive".into()));
    }
    for &p in primes {
        let field = PrimeField::new(p)?;
        if let Some(m) = constant_field {
            if !splits_completely(m, &field)? {
                return Err(Error::BadPrime { prime: p, reason: format!("does not split {m}") });
            }
        }
    }
    let results: Vec<Result<(BTreeMap<CycleType, usize>, usize)>> = std::thread::scope(|s| {
        let handles: Vec<_> = primes
            .iter()
            .map(|&p| s.spawn(move || sample_prime(family, p, samples_per_prime, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread")).collect()
    });
    let mut per_prime = BTreeMap::new();
    let mut skipped_per_prime = BTreeMap::new();
    for (&p, r) in primes.iter().zip(results) {
        let (h, s) = r?;
        let entry: &mut BTreeMap<CycleType, usize> = per_prime.entry(p).or_default();
        for (k, v) in h {
            *entry.entry(k).or_insert(0) += v;
        }
        *skipped_per_prime.entry(p).or_insert(0) += s;
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    Ok(SamplingReport {
        seed,
        primes: sorted,
        samples: samples_per_prime,
        skipped: skipped_per_prime.values().sum(),
        per_prime,
        skipped_per_prime,
    })
}

/// Checks that (a) only group cycle types occur, (b) every nontrivial
/// type occurs, (c) frequencies are within `tolerance` of the group's.
pub fn certify_monodromy(report: &SamplingReport, oracle: &GroupOracle, tolerance: &Rational) -> Result<Certificate> {
    const CHECK: &str = "monodromy";
    let hist = report.histogram();
    let total = report.total();
    if total == 0 {
        return Err(Error::Precondition("empty sampling report".into()));
    }
    let n = oracle.order();
    let forbidden: Vec<String> = hist.keys().filter(|k| !oracle.table.contains_key(*k)).map(|k| k.to_string()).collect();
    let missing: Vec<String> = oracle
        .table
        .keys()
        .filter(|k| !k.is_identity() && !hist.contains_key(*k))
        .map(|k| k.to_string())
        .collect();
    let mut deviations = BTreeMap::new();
    let mut within = true;
    for (k, &c) in &oracle.table {
        let observed = Rational::new(hist.get(k).copied().unwrap_or(0).into(), total.into());
        let expected = Rational::new(c.into(), n.into());
        let dev = (&observed - &expected).abs();
        if dev > *tolerance {
            within = false;
        }
        let entry: BTreeMap<&str, String> = [
            ("observed", format_rational(&observed)),
            ("expected", format_rational(&expected)),
            ("deviation", format_rational(&dev)),
        ]
        .into();
        deviations.insert(k.to_string(), entry);
    }
    for k in hist.keys().filter(|k| !oracle.table.contains_key(*k)) {
        let observed = Rational::new(hist[k].into(), total.into());
        if observed > *tolerance {
            within = false;
        }
    }
    let ok = forbidden.is_empty() && missing.is_empty() && within;
    let reason = if ok {
        "observed cycle types match the group".to_string()
    } else {
        let mut r = Vec::new();
        if !forbidden.is_empty() {
            r.push(format!("types outside the group: {}", forbidden.join(", ")));
        }
        if !missing.is_empty() {
            r.push(format!("types never observed: {}", missing.join(", ")));
        }
        if !within {
            r.push("frequencies outside tolerance".to_string());
        }
        r.join("; ")
    };
    Ok(Certificate::verdict(CHECK, ok, reason)
        .with("report", report.to_json(Some(if ok { "pass" } else { "fail" })))
        .with("tolerance", format_rational(tolerance))
        .with("frequencies", deviations)
        .with("group_order", n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use crate::cover::CoverAnalysis;
    use crate::exact::rat;

    #[test]
    fn psl2_f8_table() {
        let g = enumerate_psl2_f8();
        assert_eq!(g.order(), 504);
        let table: BTreeMap<String, usize> = g.table().iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let want: BTreeMap<String, usize> =
            [("1^9", 1), ("2^4.1", 63), ("3^3", 56), ("7.1^2", 216), ("9", 168)].map(|(k, v)| (k.to_string(), v)).into();
        assert_eq!(table, want);
        assert!(g.contains(&std::array::from_fn(|i| i as u8)));
        assert!(g.spot_check_closure(1000, 5));
        assert_eq!(g.cyclic_subgroups_of_order(7), 36);
        assert_eq!(g.cyclic_subgroups_of_order(9), 28);
        assert!(g.sylow_consistent());
        assert!(g.order_counts().keys().all(|o| [1, 2, 3, 7, 9].contains(o)));
    }

    #[test]
    fn cycle_types_of_permutations() {
        let p: Perm = [1, 2, 0, 4, 3, 5, 6, 7, 8];
        assert_eq!(cycle_type(&p).to_string(), "3.2.1^4");
        assert_eq!(compose(&p, &p), [2, 0, 1, 3, 4, 5, 6, 7, 8]);
    }

    fn corpus_fiber() -> Poly {
        CoverAnalysis::new(Corpus::builtin().cover().unwrap()).unwrap().primary().poly.clone()
    }

    #[test]
    fn inert_primes_are_rejected() {
        let c = Corpus::builtin();
        let f = corpus_fiber();
        assert!(matches!(
            sample_cycle_types(&f, &[101], 10, 1, Some(&c.constant_field)),
            Err(Error::BadPrime { prime: 101, .. })
        ));
        assert!(sample_cycle_types(&f, &[103], 10, 1, Some(&c.constant_field)).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = corpus_fiber();
        let a = sample_cycle_types(&f, &[103, 109], 200, 42, None).unwrap();
        let b = sample_cycle_types(&f, &[109, 103], 200, 42, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(None).to_string(), b.to_json(None).to_string());
        assert_eq!(a.total(), 400);
        let g = enumerate_psl2_f8();
        assert!(a.histogram().keys().all(|k| g.table().contains_key(k)));
    }

    #[test]
    fn cyclic_cover_fails() {
        let f = &Poly::var(X).pow(9) - &Poly::var(T);
        let r = sample_cycle_types(&f, &[103, 109, 131], 300, 42, None).unwrap();
        let cert = certify_monodromy(&r, &enumerate_psl2_f8(), &rat(1, 20)).unwrap();
        assert!(!cert.passed());
    }

    #[test]
    fn empty_report_is_an_error() {
        let r = SamplingReport {
            seed: 0,
            primes: vec![],
            samples: 1,
            skipped: 0,
            per_prime: BTreeMap::new(),
            skipped_per_prime: BTreeMap::new(),
        };
        assert!(certify_monodromy(&r, &enumerate_psl2_f8(), &rat(1, 20)).is_err());
    }
}
