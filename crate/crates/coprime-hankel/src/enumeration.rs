//! Exact counting: closed-form formulas for coprime tuples and for Hankel
//! matrices stratified by rank and by the leading-minor index delta, the
//! recurrence-based stratum membership tests, and exhaustive brute-force
//! censuses that double as oracles for all of the formulas.

use crate::correspondence::{fiber, sigma, CoprimePair};
use crate::error::{Error, Result};
use crate::field::{prime_power, Elt, Field};
use crate::poly::monic_poly_from_index;
use crate::structured::{hankel_from_index, HankelMatrix, ToeplitzMatrix};
use num_bigint::BigUint;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::collections::BTreeMap;
use std::thread;

/// Default cap on the number of objects a brute-force enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

fn require_prime_power(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

fn pow_big(q: u64, e: u64) -> Result<BigUint> {
    let e: u32 = e
        .try_into()
        .map_err(|_| Error::ParamOutOfRange(format!("exponent {e} too large")))?;
    Ok(BigUint::from(q).pow(e))
}

/// Number of ordered m-tuples of coprime monic polynomials with the given
/// degrees: q^(n_1+...+n_m) (1 - q^(1-m)) when every degree is >= 1, and
/// q^(n_1+...+n_m) when some degree is 0.
pub fn count_coprime_tuples(q: u64, degrees: &[usize]) -> Result<BigUint> {
    require_prime_power(q)?;
    if degrees.is_empty() {
        return Err(Error::ParamOutOfRange("need at least one degree".into()));
    }
    let m = degrees.len() as u64;
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    let all_positive = degrees.iter().all(|&d| d >= 1);
    if all_positive {
        Ok(pow_big(q, sum)? - pow_big(q, sum - (m - 1))?)
    } else {
        pow_big(q, sum)
    }
}

/// Number of n x n Hankel matrices of rank exactly r:
/// 1 for r = 0, q^(2r-2)(q^2-1) for 1 <= r <= n-1, q^(2n-2)(q-1) for r = n.
pub fn count_hankel_by_rank(q: u64, n: usize, r: usize) -> Result<BigUint> {
    require_prime_power(q)?;
    if n == 0 || r > n {
        return Err(Error::ParamOutOfRange(format!(
            "need 0 <= r <= n, n >= 1; got n={n}, r={r}"
        )));
    }
    let (n, r) = (n as u64, r as u64);
    Ok(if r == 0 {
        BigUint::from(1u32)
    } else if r < n {
        pow_big(q, 2 * r - 2)? * (q * q - 1)
    } else {
        pow_big(q, 2 * n - 2)? * (q - 1)
    })
}

/// Size of the stratum of n x n Hankel matrices with delta = k:
/// q^(n-1) for k = 0 and q^(n+k-2)(q-1) for 1 <= k <= n. At k = n this is
/// the count of nonsingular Hankel matrices, q^(2n-2)(q-1).
pub fn count_stratum(q: u64, n: usize, k: usize) -> Result<BigUint> {
    require_prime_power(q)?;
    if n == 0 || k > n {
        return Err(Error::ParamOutOfRange(format!(
            "need 0 <= k <= n, n >= 1; got n={n}, k={k}"
        )));
    }
    let (n, k) = (n as u64, k as u64);
    Ok(if k == 0 {
        pow_big(q, n - 1)?
    } else {
        pow_big(q, n + k - 2)? * (q - 1)
    })
}

/// Size of the set of n x n Hankel matrices with delta = k and rank <= r,
/// for 0 <= k <= r < n: q^r for k = 0 and q^(r+k-1)(q-1) for k >= 1.
pub fn count_stratum_rank(q: u64, n: usize, k: usize, r: usize) -> Result<BigUint> {
    require_prime_power(q)?;
    if n == 0 || k > r || r >= n {
        return Err(Error::ParamOutOfRange(format!(
            "need 0 <= k <= r < n, n >= 1; got n={n}, k={k}, r={r}"
        )));
    }
    let (k, r) = (k as u64, r as u64);
    Ok(if k == 0 {
        pow_big(q, r)?
    } else {
        pow_big(q, r + k - 1)? * (q - 1)
    })
}

/// Number of n x n Hankel matrices of rank at most r: q^(2r) for r < n
/// (the sum of [`count_stratum_rank`] over k <= r), and q^(2n-1) for r = n.
pub fn count_hankel_rank_at_most(q: u64, n: usize, r: usize) -> Result<BigUint> {
    require_prime_power(q)?;
    if n == 0 || r > n {
        return Err(Error::ParamOutOfRange(format!(
            "need 0 <= r <= n, n >= 1; got n={n}, r={r}"
        )));
    }
    let (n, r) = (n as u64, r as u64);
    if r < n {
        pow_big(q, 2 * r)
    } else {
        pow_big(q, 2 * n - 1)
    }
}

/// The unique x with A_k x = (a_{k+1}, ..., a_{2k})^T, i.e. the coefficients
/// of the length-k linear recurrence a_{k+t} = x_1 a_t + ... + x_k a_{t+k-1}
/// satisfied for t = 1..k.
pub fn recurrence_vector(a: &HankelMatrix, k: usize) -> Result<Vec<Elt>> {
    let n = a.n();
    if k == 0 || k > n - 1 {
        return Err(Error::ParamOutOfRange(format!(
            "need 1 <= k <= n-1; got k={k}, n={n}"
        )));
    }
    let leading = a.to_dense().leading(k);
    let rhs: Vec<Elt> = a.a()[k..2 * k].to_vec();
    leading.solve(&rhs)
}

fn recurrence_holds(field: &Field, a: &[Elt], x: &[Elt], t_max: usize) -> bool {
    let k = x.len();
    for t in 1..=t_max {
        let mut acc = field.zero();
        for s in 1..=k {
            acc = field.add(acc, field.mul(x[s - 1], a[t + s - 2]));
        }
        if acc != a[k + t - 1] {
            return false;
        }
    }
    true
}

/// Whether delta(A) = k, decided without computing any minor beyond A_k:
/// for k = 0 the first n entries must vanish; for 1 <= k <= n-1 the
/// recurrence from A_k must extend to t = 1..n (false immediately when A_k
/// is singular); k = n falls back to a full determinant.
pub fn in_stratum(a: &HankelMatrix, k: usize) -> Result<bool> {
    let n = a.n();
    if k > n {
        return Err(Error::ParamOutOfRange(format!(
            "need k <= n; got k={k}, n={n}"
        )));
    }
    let f = a.field();
    if k == 0 {
        return Ok(a.a()[..n].iter().all(|&e| e == f.zero()));
    }
    if k == n {
        return Ok(a.to_dense().det() != f.zero());
    }
    match recurrence_vector(a, k) {
        Ok(x) => Ok(recurrence_holds(f, a.a(), &x, n)),
        Err(Error::SingularMatrix) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether delta(A) = k and rank(A) <= r, for 0 <= k <= r < n, decided by
/// extending the same recurrence check to t = 1..(2n-r-1); for k = 0 the
/// first 2n-r-1 entries must vanish.
pub fn in_stratum_rank(a: &HankelMatrix, k: usize, r: usize) -> Result<bool> {
    let n = a.n();
    if k > r || r >= n {
        return Err(Error::ParamOutOfRange(format!(
            "need 0 <= k <= r < n; got k={k}, r={r}, n={n}"
        )));
    }
    let f = a.field();
    let t_max = 2 * n - r - 1;
    if k == 0 {
        return Ok(a.a()[..t_max].iter().all(|&e| e == f.zero()));
    }
    match recurrence_vector(a, k) {
        Ok(x) => Ok(recurrence_holds(f, a.a(), &x, t_max)),
        Err(Error::SingularMatrix) => Ok(false),
        Err(e) => Err(e),
    }
}

fn check_budget(objects: BigUint, budget: u64) -> Result<u64> {
    if objects > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: objects,
            budget,
        });
    }
    let digits = objects.to_u64_digits();
    Ok(digits.first().copied().unwrap_or(0))
}

fn split_range(total: u64, jobs: usize) -> Vec<(u64, u64)> {
    let jobs = (jobs.max(1) as u64).min(total.max(1));
    let chunk = total / jobs;
    let rem = total % jobs;
    let mut ranges = Vec::with_capacity(jobs as usize);
    let mut lo = 0;
    for i in 0..jobs {
        let hi = lo + chunk + u64::from(i < rem);
        ranges.push((lo, hi));
        lo = hi;
    }
    ranges
}

/// Exhaustive tally of all q^(2n-1) Hankel matrices of order n by
/// (rank, delta), both computed by dense linear algebra — deliberately a
/// different code path from the recurrence tests it serves to validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    q: u64,
    n: usize,
    cells: BTreeMap<(usize, usize), BigUint>,
}

impl CensusTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cells keyed by (rank, delta), nonzero counts only.
    pub fn cells(&self) -> &BTreeMap<(usize, usize), BigUint> {
        &self.cells
    }

    pub fn cell(&self, rank: usize, delta: usize) -> BigUint {
        self.cells
            .get(&(rank, delta))
            .cloned()
            .unwrap_or_else(|| BigUint::from(0u32))
    }

    pub fn total(&self) -> BigUint {
        self.cells.values().sum()
    }

    pub fn rank_marginals(&self) -> BTreeMap<usize, BigUint> {
        let mut out = BTreeMap::new();
        for (&(r, _), c) in &self.cells {
            *out.entry(r).or_insert_with(|| BigUint::from(0u32)) += c;
        }
        out
    }

    pub fn delta_marginals(&self) -> BTreeMap<usize, BigUint> {
        let mut out = BTreeMap::new();
        for (&(_, d), c) in &self.cells {
            *out.entry(d).or_insert_with(|| BigUint::from(0u32)) += c;
        }
        out
    }
}

impl Serialize for CensusTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Cell {
            rank: usize,
            delta: usize,
            count: serde_json::Number,
        }
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|(&(rank, delta), c)| Cell {
                rank,
                delta,
                count: big_to_number(c),
            })
            .collect();
        let mut st = s.serialize_struct("CensusTable", 4)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("cells", &cells)?;
        st.serialize_field("total", &big_to_number(&self.total()))?;
        st.end()
    }
}

pub fn brute_hankel_census(field: &Field, n: usize) -> Result<CensusTable> {
    brute_hankel_census_with(field, n, DEFAULT_BUDGET, 1)
}

pub fn brute_hankel_census_with(
    field: &Field,
    n: usize,
    budget: u64,
    jobs: usize,
) -> Result<CensusTable> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("order must be >= 1".into()));
    }
    let total = check_budget(pow_big(field.q(), 2 * n as u64 - 1)?, budget)?;
    let tallies: Vec<BTreeMap<(usize, usize), u64>> = thread::scope(|scope| {
        let handles: Vec<_> = split_range(total, jobs)
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || {
                    let mut tally: BTreeMap<(usize, usize), u64> = BTreeMap::new();
                    for idx in lo..hi {
                        let h = hankel_from_index(field, n, idx);
                        *tally.entry((h.rank(), h.delta())).or_insert(0) += 1;
                    }
                    tally
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut cells: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for tally in tallies {
        for (key, count) in tally {
            *cells.entry(key).or_insert_with(|| BigUint::from(0u32)) += count;
        }
    }
    Ok(CensusTable {
        q: field.q(),
        n,
        cells,
    })
}

/// Exhaustive tally of ordered tuples of monic polynomials with the given
/// degrees, keyed by the degree of their monic GCD. Degree 0 means coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeCensus {
    q: u64,
    degrees: Vec<usize>,
    by_gcd_degree: BTreeMap<usize, BigUint>,
}

impl CoprimeCensus {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn by_gcd_degree(&self) -> &BTreeMap<usize, BigUint> {
        &self.by_gcd_degree
    }

    pub fn count(&self, gcd_degree: usize) -> BigUint {
        self.by_gcd_degree
            .get(&gcd_degree)
            .cloned()
            .unwrap_or_else(|| BigUint::from(0u32))
    }

    pub fn coprime_count(&self) -> BigUint {
        self.count(0)
    }

    pub fn total(&self) -> BigUint {
        self.by_gcd_degree.values().sum()
    }
}

impl Serialize for CoprimeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            degree: usize,
            count: serde_json::Number,
        }
        let entries: Vec<Entry> = self
            .by_gcd_degree
            .iter()
            .map(|(&degree, c)| Entry {
                degree,
                count: big_to_number(c),
            })
            .collect();
        let mut st = s.serialize_struct("CoprimeCensus", 4)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field("by_gcd_degree", &entries)?;
        st.serialize_field("total", &big_to_number(&self.total()))?;
        st.end()
    }
}

pub fn brute_coprime_census(field: &Field, degrees: &[usize]) -> Result<CoprimeCensus> {
    brute_coprime_census_with(field, degrees, DEFAULT_BUDGET, 1)
}

pub fn brute_coprime_census_with(
    field: &Field,
    degrees: &[usize],
    budget: u64,
    jobs: usize,
) -> Result<CoprimeCensus> {
    if degrees.is_empty() {
        return Err(Error::ParamOutOfRange("need at least one degree".into()));
    }
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    let total = check_budget(pow_big(field.q(), sum)?, budget)?;
    let radices: Vec<u64> = degrees.iter().map(|&d| field.q().pow(d as u32)).collect();
    let tallies: Vec<BTreeMap<usize, u64>> = thread::scope(|scope| {
        let radices = &radices;
        let handles: Vec<_> = split_range(total, jobs)
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || {
                    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
                    for idx in lo..hi {
                        let mut rest = idx;
                        let mut gcd: Option<crate::poly::Poly> = None;
                        for (slot, &radix) in radices.iter().enumerate() {
                            let p = monic_poly_from_index(field, degrees[slot], rest % radix);
                            rest /= radix;
                            gcd = Some(match gcd {
                                None => p,
                                Some(g) if g.is_one() => g,
                                Some(g) => g.gcd(&p).expect("monic polys share a field"),
                            });
                        }
                        let d = gcd
                            .expect("at least one slot")
                            .degree()
                            .expect("gcd of monic polynomials is nonzero");
                        *tally.entry(d).or_insert(0) += 1;
                    }
                    tally
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut by_gcd_degree: BTreeMap<usize, BigUint> = BTreeMap::new();
    for tally in tallies {
        for (key, count) in tally {
            *by_gcd_degree
                .entry(key)
                .or_insert_with(|| BigUint::from(0u32)) += count;
        }
    }
    Ok(CoprimeCensus {
        q: field.q(),
        degrees: degrees.to_vec(),
        by_gcd_degree,
    })
}

/// Outcome of exhaustively checking the surjection sigma for one (q, n):
/// every coprime pair is mapped, every image must be nonsingular, the image
/// set must be all of the nonsingular Toeplitz matrices, every fiber must
/// have exactly q elements, and [`fiber`] must reconstruct each preimage set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub q: u64,
    pub n: usize,
    pub pairs: u64,
    pub images: u64,
    pub surjective: bool,
    pub all_images_nonsingular: bool,
    pub fibers_uniform: bool,
    pub fiber_size: u64,
    pub fibers_reconstruct: bool,
    pub pass: bool,
}

pub fn verify_sigma(field: &Field, n: usize) -> Result<SigmaReport> {
    verify_sigma_with(field, n, DEFAULT_BUDGET)
}

pub fn verify_sigma_with(field: &Field, n: usize, budget: u64) -> Result<SigmaReport> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("order must be >= 1".into()));
    }
    let q = field.q();
    check_budget(pow_big(q, 2 * n as u64)?, budget)?;
    let monic_count = q.pow(n as u32);

    let mut by_image: BTreeMap<Vec<u64>, Vec<CoprimePair>> = BTreeMap::new();
    let mut pairs: u64 = 0;
    let mut all_images_nonsingular = true;
    for fi in 0..monic_count {
        let f = monic_poly_from_index(field, n, fi);
        for gi in 0..monic_count {
            let g = monic_poly_from_index(field, n, gi);
            let Ok(pair) = CoprimePair::new(f.clone(), g) else {
                continue;
            };
            pairs += 1;
            let image = sigma(&pair);
            if image.rank() != n {
                all_images_nonsingular = false;
            }
            let key: Vec<u64> = image.a().iter().map(|e| e.code()).collect();
            by_image.entry(key).or_default().push(pair);
        }
    }

    let images = by_image.len() as u64;
    let fibers_uniform = by_image.values().all(|v| v.len() as u64 == q);
    let fiber_size = if fibers_uniform { q } else { 0 };
    let surjective = all_images_nonsingular && BigUint::from(images) == count_stratum(q, n, n)?;

    let mut fibers_reconstruct = true;
    for (key, preimages) in &by_image {
        let elts: Vec<Elt> = key
            .iter()
            .map(|&c| field.elt(c).expect("valid code"))
            .collect();
        let toeplitz = ToeplitzMatrix::new(field, n, elts).expect("consistent dims");
        let Ok(reconstructed) = fiber(&toeplitz.to_hankel()) else {
            fibers_reconstruct = false;
            continue;
        };
        let mut got: Vec<(Vec<u64>, Vec<u64>)> = reconstructed.iter().map(pair_codes).collect();
        let mut want: Vec<(Vec<u64>, Vec<u64>)> = preimages.iter().map(pair_codes).collect();
        got.sort();
        want.sort();
        if got != want {
            fibers_reconstruct = false;
        }
    }

    let pass = surjective && fibers_uniform && fibers_reconstruct && pairs == q * images;
    Ok(SigmaReport {
        q,
        n,
        pairs,
        images,
        surjective,
        all_images_nonsingular,
        fibers_uniform,
        fiber_size,
        fibers_reconstruct,
        pass,
    })
}

fn pair_codes(p: &CoprimePair) -> (Vec<u64>, Vec<u64>) {
    (
        p.f().coeffs().iter().map(|e| e.code()).collect(),
        p.g().coeffs().iter().map(|e| e.code()).collect(),
    )
}

/// Renders an arbitrary-precision count as an exact JSON number.
pub(crate) fn big_to_number(b: &BigUint) -> serde_json::Number {
    serde_json::from_str(&b.to_string()).expect("decimal digits form a valid JSON number")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structured::hankel_matrices;

    fn gf(p: u64) -> Field {
        Field::new(p, 1, None).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn coprime_tuple_counts() {
        assert_eq!(count_coprime_tuples(2, &[2, 2]).unwrap(), big(8));
        assert_eq!(count_coprime_tuples(3, &[2, 0]).unwrap(), big(9));
        assert_eq!(count_coprime_tuples(2, &[1, 1, 1]).unwrap(), big(6));
        assert_eq!(count_coprime_tuples(2, &[2, 1, 1]).unwrap(), big(12));
        // single polynomial of positive degree is never "coprime"
        assert_eq!(count_coprime_tuples(5, &[3]).unwrap(), big(0));
        assert_eq!(count_coprime_tuples(5, &[0]).unwrap(), big(1));
        assert!(count_coprime_tuples(6, &[1, 1]).is_err());
        assert!(count_coprime_tuples(4, &[1, 1]).is_ok());
        assert!(count_coprime_tuples(2, &[]).is_err());
    }

    #[test]
    fn hankel_rank_counts() {
        assert_eq!(count_hankel_by_rank(2, 3, 2).unwrap(), big(12));
        assert_eq!(count_hankel_by_rank(2, 3, 3).unwrap(), big(16));
        assert_eq!(count_hankel_by_rank(7, 5, 0).unwrap(), big(1));
        assert!(count_hankel_by_rank(2, 3, 4).is_err());
        // q=2, n=2 marginals 1, 3, 4
        let marg: Vec<BigUint> = (0..=2)
            .map(|r| count_hankel_by_rank(2, 2, r).unwrap())
            .collect();
        assert_eq!(marg, vec![big(1), big(3), big(4)]);
    }

    #[test]
    fn stratum_counts() {
        assert_eq!(count_stratum(2, 2, 0).unwrap(), big(2));
        assert_eq!(count_stratum(2, 2, 1).unwrap(), big(2));
        assert_eq!(count_stratum(2, 2, 2).unwrap(), big(4));
        assert!(count_stratum(2, 2, 3).is_err());
        // k = n is the nonsingular count
        assert_eq!(count_stratum(3, 2, 2).unwrap(), big(18));
    }

    #[test]
    fn stratum_rank_counts() {
        assert_eq!(count_stratum_rank(2, 3, 0, 1).unwrap(), big(2));
        assert_eq!(count_stratum_rank(2, 3, 1, 2).unwrap(), big(4));
        assert!(count_stratum_rank(2, 3, 2, 1).is_err());
        assert!(count_stratum_rank(2, 3, 0, 3).is_err());
        // summed over k <= r equals q^(2r)
        let summed: BigUint = (0..=2)
            .map(|k| count_stratum_rank(2, 3, k, 2).unwrap())
            .sum();
        assert_eq!(summed, big(16));
        assert_eq!(count_hankel_rank_at_most(2, 3, 2).unwrap(), big(16));
        assert_eq!(count_hankel_rank_at_most(2, 3, 3).unwrap(), big(32));
    }

    #[test]
    fn recurrence_vector_examples() {
        let f2 = gf(2);
        let ones = HankelMatrix::from_codes(&f2, 3, &[1, 1, 1, 1, 1]).unwrap();
        let x = recurrence_vector(&ones, 1).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x[0], f2.one());

        let h = HankelMatrix::from_codes(&f2, 3, &[1, 1, 0, 1, 0]).unwrap();
        let x = recurrence_vector(&h, 2).unwrap();
        let codes: Vec<u64> = x.iter().map(|e| e.code()).collect();
        assert_eq!(codes, vec![1, 1]);

        let f3 = gf(3);
        let h = HankelMatrix::from_codes(&f3, 2, &[1, 0, 0]).unwrap();
        let x = recurrence_vector(&h, 1).unwrap();
        assert_eq!(x[0], f3.zero());

        // singular leading block
        let h = HankelMatrix::from_codes(&f2, 2, &[0, 1, 0]).unwrap();
        assert_eq!(recurrence_vector(&h, 1).unwrap_err(), Error::SingularMatrix);
        assert!(recurrence_vector(&h, 0).is_err());
        assert!(recurrence_vector(&h, 2).is_err());
    }

    #[test]
    fn in_stratum_examples() {
        let f2 = gf(2);
        let zero = HankelMatrix::from_codes(&f2, 3, &[0, 0, 0, 0, 0]).unwrap();
        assert!(in_stratum(&zero, 0).unwrap());
        assert!(!in_stratum(&zero, 1).unwrap());

        let ones = HankelMatrix::from_codes(&f2, 3, &[1, 1, 1, 1, 1]).unwrap();
        assert!(in_stratum(&ones, 1).unwrap());
        assert!(!in_stratum(&ones, 0).unwrap());

        let h = HankelMatrix::from_codes(&f2, 2, &[0, 1, 0]).unwrap();
        assert!(!in_stratum(&h, 1).unwrap()); // A_1 singular short-circuits
        assert!(in_stratum(&h, 2).unwrap());
        assert!(in_stratum(&h, 3).is_err());
    }

    #[test]
    fn in_stratum_rank_examples() {
        let f2 = gf(2);
        let zero = HankelMatrix::from_codes(&f2, 3, &[0, 0, 0, 0, 0]).unwrap();
        assert!(in_stratum_rank(&zero, 0, 0).unwrap());
        assert!(in_stratum_rank(&zero, 0, 2).unwrap());

        let ones = HankelMatrix::from_codes(&f2, 3, &[1, 1, 1, 1, 1]).unwrap();
        assert!(in_stratum_rank(&ones, 1, 1).unwrap());
        assert!(in_stratum_rank(&ones, 1, 2).unwrap());

        // delta = 2, rank = 2: the recurrence from A_2 extends to t = 3
        let h = HankelMatrix::from_codes(&f2, 3, &[1, 1, 0, 1, 1]).unwrap();
        assert_eq!((h.rank(), h.delta()), (2, 2));
        assert!(in_stratum_rank(&h, 2, 2).unwrap());

        assert!(in_stratum_rank(&ones, 1, 3).is_err());
        assert!(in_stratum_rank(&ones, 2, 1).is_err());
    }

    /// The recurrence-based membership tests agree with independently
    /// computed (delta, rank) on every matrix.
    #[test]
    fn stratum_tests_match_delta_and_rank_exhaustively() {
        for p in [2u64, 3] {
            let f = gf(p);
            for n in 1..=3usize {
                for h in hankel_matrices(&f, n) {
                    let delta = h.delta();
                    let rank = h.rank();
                    for k in 0..=n {
                        assert_eq!(in_stratum(&h, k).unwrap(), delta == k, "{h} k={k}");
                    }
                    for r in 0..n {
                        for k in 0..=r {
                            assert_eq!(
                                in_stratum_rank(&h, k, r).unwrap(),
                                delta == k && rank <= r,
                                "{h} k={k} r={r}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn brute_coprime_census_examples() {
        let f2 = gf(2);
        let census = brute_coprime_census(&f2, &[1, 1]).unwrap();
        assert_eq!(census.count(0), big(2));
        assert_eq!(census.count(1), big(2));

        let census = brute_coprime_census(&f2, &[1, 1, 1]).unwrap();
        assert_eq!(census.count(0), big(6));
        assert_eq!(census.count(1), big(2));
        assert_eq!(census.total(), big(8));

        let f3 = gf(3);
        let census = brute_coprime_census(&f3, &[1, 1]).unwrap();
        assert_eq!(census.count(0), big(6));
        assert_eq!(census.count(1), big(3));
    }

    #[test]
    fn brute_hankel_census_examples() {
        let f2 = gf(2);
        let census = brute_hankel_census(&f2, 1).unwrap();
        assert_eq!(census.cell(0, 0), big(1));
        assert_eq!(census.cell(1, 1), big(1));
        assert_eq!(census.total(), big(2));

        let census = brute_hankel_census(&f2, 2).unwrap();
        let ranks: Vec<BigUint> = (0..=2)
            .map(|r| {
                census
                    .rank_marginals()
                    .get(&r)
                    .cloned()
                    .unwrap_or_else(|| big(0))
            })
            .collect();
        assert_eq!(ranks, vec![big(1), big(3), big(4)]);
        let deltas: Vec<BigUint> = (0..=2)
            .map(|d| {
                census
                    .delta_marginals()
                    .get(&d)
                    .cloned()
                    .unwrap_or_else(|| big(0))
            })
            .collect();
        assert_eq!(deltas, vec![big(2), big(2), big(4)]);
        // delta never exceeds rank
        for &(rank, delta) in census.cells().keys() {
            assert!(delta <= rank);
        }
    }

    #[test]
    fn census_deterministic_across_worker_counts() {
        let f3 = gf(3);
        let single = brute_hankel_census_with(&f3, 2, DEFAULT_BUDGET, 1).unwrap();
        for jobs in [2usize, 3, 7, 64] {
            assert_eq!(
                brute_hankel_census_with(&f3, 2, DEFAULT_BUDGET, jobs).unwrap(),
                single
            );
        }
        let one = brute_coprime_census_with(&f3, &[2, 1], DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(
            brute_coprime_census_with(&f3, &[2, 1], DEFAULT_BUDGET, 5).unwrap(),
            one
        );
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = gf(2);
        let err = brute_hankel_census_with(&f2, 4, 100, 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        assert!(brute_coprime_census_with(&f2, &[10, 10], 1000, 1).is_err());
        assert!(verify_sigma_with(&f2, 4, 100).is_err());
    }

    #[test]
    fn partition_identity_of_eq4() {
        // sum_d q^d N(degrees - d) = q^(sum degrees), checked from the census
        for (p, degrees) in [(2u64, vec![2usize, 2]), (2, vec![2, 1, 1]), (3, vec![2, 2])] {
            let f = gf(p);
            let census = brute_coprime_census(&f, &degrees).unwrap();
            let min_deg = *degrees.iter().min().unwrap();
            let mut acc = BigUint::from(0u32);
            for d in 0..=min_deg {
                let reduced: Vec<usize> = degrees.iter().map(|&x| x - d).collect();
                let n = count_coprime_tuples(p, &reduced).unwrap();
                // each S_d has q^d * N(degrees - d) elements
                assert_eq!(census.count(d), pow_big(p, d as u64).unwrap() * &n, "d={d}");
                acc += census.count(d);
            }
            let sum: u64 = degrees.iter().map(|&x| x as u64).sum();
            assert_eq!(acc, pow_big(p, sum).unwrap());
        }
    }

    #[test]
    fn verify_sigma_examples() {
        let f2 = gf(2);
        let report = verify_sigma(&f2, 2).unwrap();
        assert_eq!(report.pairs, 8);
        assert_eq!(report.images, 4);
        assert_eq!(report.fiber_size, 2);
        assert!(report.pass);

        let report = verify_sigma(&f2, 1).unwrap();
        assert_eq!(report.pairs, 2);
        assert_eq!(report.images, 1);
        assert!(report.pass);

        let f3 = gf(3);
        let report = verify_sigma(&f3, 2).unwrap();
        assert_eq!(report.pairs, 54);
        assert_eq!(report.images, 18);
        assert_eq!(report.fiber_size, 3);
        assert!(report.pass);
    }

    #[test]
    fn census_json_is_stable() {
        let f2 = gf(2);
        let census = brute_hankel_census(&f2, 1).unwrap();
        let json = serde_json::to_string(&census).unwrap();
        assert_eq!(
            json,
            r#"{"q":2,"n":1,"cells":[{"rank":0,"delta":0,"count":1},{"rank":1,"delta":1,"count":1}],"total":2}"#
        );
        let census = brute_coprime_census(&f2, &[1, 1]).unwrap();
        let json = serde_json::to_string(&census).unwrap();
        assert_eq!(
            json,
            r#"{"q":2,"degrees":[1,1],"by_gcd_degree":[{"degree":0,"count":2},{"degree":1,"count":2}],"total":4}"#
        );
    }

    #[test]
    fn big_counts_serialize_exactly() {
        let n = count_coprime_tuples(7, &[40, 40]).unwrap();
        let json = serde_json::to_string(&big_to_number(&n)).unwrap();
        assert_eq!(json, n.to_string());
        assert!(json.len() > 20);
    }
}
