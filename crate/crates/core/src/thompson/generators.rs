//! The named elements of V, interval transporters, and the constructive
//! generation of V by `G_i` and `G_i^{a_i}`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dyadic::{Dyadic, StdInterval};
use super::element::{level_interval, swapped_level_interval, VElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    A,
    B,
    C,
    Pi0,
    /// `a_i`, swapping `[0, 1/2^{i+1})` and `[1/2^{i+1}, 1/2^i)`.
    Swap(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A => write!(f, "A"),
            Generator::B => write!(f, "B"),
            Generator::C => write!(f, "C"),
            Generator::Pi0 => write!(f, "pi0"),
            Generator::Swap(i) => write!(f, "a{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Generator> {
        match s {
            "A" => Ok(Generator::A),
            "B" => Ok(Generator::B),
            "C" => Ok(Generator::C),
            "pi0" | "π0" | "π₀" => Ok(Generator::Pi0),
            _ => s
                .strip_prefix('a')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Generator::Swap)
                .ok_or_else(|| Error::UnknownGenerator(s.to_string())),
        }
    }
}

fn table(rows: &[((i128, i128, u32), (i128, i128, u32))]) -> VElement {
    VElement::from_pairs(
        rows.iter()
            .map(|&((a, b, k), (c, e, l))| (StdInterval::frac(a, b, k), StdInterval::frac(c, e, l)))
            .collect(),
    )
    .expect("generator tables are valid")
}

/// The exact table of a named generator.
pub fn generator(g: Generator) -> Result<VElement> {
    Ok(match g {
        // x/2 on [0,1/2); x-1/4 on [1/2,3/4); 2x-1 on [3/4,1)
        Generator::A => table(&[((0, 2, 2), (0, 1, 2)), ((2, 3, 2), (1, 2, 2)), ((3, 4, 2), (2, 4, 2))]),
        // x on [0,1/2); x/2+1/4 on [1/2,3/4); x-1/8 on [3/4,7/8); 2x-1 on [7/8,1)
        Generator::B => table(&[
            ((0, 4, 3), (0, 4, 3)),
            ((4, 6, 3), (4, 5, 3)),
            ((6, 7, 3), (5, 6, 3)),
            ((7, 8, 3), (6, 8, 3)),
        ]),
        // x/2+3/4 on [0,1/2); 2x-1 on [1/2,3/4); x-1/4 on [3/4,1)
        Generator::C => table(&[((0, 2, 2), (3, 4, 2)), ((2, 3, 2), (0, 2, 2)), ((3, 4, 2), (2, 3, 2))]),
        // x/2+1/2 on [0,1/2); 2x-1 on [1/2,3/4); x on [3/4,1)
        Generator::Pi0 => table(&[((0, 2, 2), (2, 3, 2)), ((2, 3, 2), (0, 2, 2)), ((3, 4, 2), (3, 4, 2))]),
        Generator::Swap(i) => {
            if i == 0 {
                return Err(Error::UnknownGenerator("a0".into()));
            }
            let low = level_interval(i);
            let high = swapped_level_interval(i);
            let rest = StdInterval::of(high.hi, Dyadic::ONE);
            VElement::from_pairs(vec![(low, high), (high, low), (rest, rest)])?
        }
    })
}

/// `a_i`; panics for `i = 0`.
pub fn swap(i: usize) -> VElement {
    generator(Generator::Swap(i)).expect("a_i is defined for i >= 1")
}

/// Complement of a union of disjoint intervals in `[0,1)`, as sorted intervals.
fn complement(taken: &[StdInterval]) -> Vec<StdInterval> {
    let mut sorted = taken.to_vec();
    sorted.sort_by_key(|iv| iv.lo);
    let mut out = Vec::new();
    let mut at = Dyadic::ZERO;
    for iv in sorted {
        if iv.lo > at {
            out.push(StdInterval { lo: at, hi: iv.lo });
        }
        at = at.max(iv.hi);
    }
    if at < Dyadic::ONE {
        out.push(StdInterval { lo: at, hi: Dyadic::ONE });
    }
    out
}

fn standard_cover(ivs: &[StdInterval]) -> Vec<StdInterval> {
    ivs.iter().flat_map(|iv| iv.standard_pieces()).collect()
}

/// Splits the largest interval (leftmost on ties) at its midpoint.
fn split_largest(pieces: &mut Vec<StdInterval>) {
    let (idx, _) = pieces
        .iter()
        .enumerate()
        .fold(None::<(usize, Dyadic)>, |best, (i, p)| match best {
            Some((_, len)) if len >= p.len() => best,
            _ => Some((i, p.len())),
        })
        .expect("non-empty");
    let (l, r) = pieces[idx].split();
    pieces.splice(idx..=idx, [l, r]);
}

/// An element mapping `src` onto `dst` affinely and fixing every interval of
/// `fix` pointwise.
///
/// The complements are cut into standard dyadic intervals, the shorter list is
/// refined by halving its largest interval until the counts agree, and the
/// pieces are then matched in left-to-right order.
pub fn transporter(src: StdInterval, dst: StdInterval, fix: &[StdInterval]) -> Result<VElement> {
    if src.len().numerator() != dst.len().numerator() {
        return Err(Error::Construction(format!(
            "{src} cannot be mapped onto {dst} with a power-of-two slope"
        )));
    }
    for f in fix {
        if !f.is_disjoint(&src) || !f.is_disjoint(&dst) {
            return Err(Error::Construction(format!("fixed interval {f} meets {src} or {dst}")));
        }
    }
    for (k, f) in fix.iter().enumerate() {
        if fix[..k].iter().any(|g| !g.is_disjoint(f)) {
            return Err(Error::Construction("fixed intervals overlap".into()));
        }
    }
    let mut taken_src = fix.to_vec();
    taken_src.push(src);
    let mut taken_dst = fix.to_vec();
    taken_dst.push(dst);
    let mut from = standard_cover(&complement(&taken_src));
    let mut to = standard_cover(&complement(&taken_dst));
    if from.is_empty() != to.is_empty() {
        return Err(Error::Construction(
            "exactly one complement is empty; no bijection exists".into(),
        ));
    }
    while from.len() < to.len() {
        split_largest(&mut from);
    }
    while to.len() < from.len() {
        split_largest(&mut to);
    }
    let mut pairs: Vec<(StdInterval, StdInterval)> = fix.iter().map(|f| (*f, *f)).collect();
    pairs.push((src, dst));
    pairs.extend(from.into_iter().zip(to));
    VElement::from_pairs(pairs)
}

/// Which of the two generating subgroups a witness letter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LetterTag {
    /// `G_i`
    Level,
    /// `G_i^{a_i}`
    SwappedLevel,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessLetter {
    pub tag: LetterTag,
    pub element: VElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationWitness {
    pub target: Generator,
    pub letters: Vec<WitnessLetter>,
}

impl GenerationWitness {
    pub fn product(&self) -> VElement {
        self.letters
            .iter()
            .fold(VElement::identity(), |acc, l| acc.compose(&l.element))
    }
}

/// Membership in the tagged subgroup, decided from breakpoints.
pub fn letter_in_tag(g: &VElement, tag: LetterTag, i: usize) -> bool {
    match tag {
        LetterTag::Level => g.fixes_pointwise(&level_interval(i)),
        LetterTag::SwappedLevel => g.fixes_pointwise(&swapped_level_interval(i)),
    }
}

fn letter(tag: LetterTag, element: VElement) -> WitnessLetter {
    WitnessLetter { tag, element }
}

/// Writes `g`, which fixes `support_fix` pointwise, as `D⁻¹ · (D g D⁻¹) · D`
/// with `D ∈ G_i` carrying `support_fix` onto `[1/2^{i+1}, 1/2^i)`.
fn conjugate_into_swapped(g: &VElement, support_fix: StdInterval, i: usize) -> Result<Vec<WitnessLetter>> {
    let d = transporter(support_fix, swapped_level_interval(i), &[level_interval(i)])?;
    let middle = d.compose(g).compose(&d.inverse());
    Ok(vec![
        letter(LetterTag::Level, d.inverse()),
        letter(LetterTag::SwappedLevel, middle),
        letter(LetterTag::Level, d),
    ])
}

/// Words over `G_i ∪ G_i^{a_i}` whose products are `A`, `B`, `C` and `π₀`.
pub fn generation_witness(i: usize) -> Result<Vec<GenerationWitness>> {
    if i == 0 {
        return Err(Error::Precondition("generation witnesses need i >= 1".into()));
    }
    let a = generator(Generator::A)?;
    let b = generator(Generator::B)?;
    let c = generator(Generator::C)?;
    let pi0 = generator(Generator::Pi0)?;

    let pi0_letters = conjugate_into_swapped(&pi0, StdInterval::frac(3, 4, 2), i)?;

    let b_inv_a = b.inverse().compose(&a);
    let mut a_letters = vec![letter(LetterTag::Level, b.clone())];
    a_letters.extend(conjugate_into_swapped(&b_inv_a, StdInterval::frac(7, 8, 3), i)?);

    let pi0_inv_c = pi0.inverse().compose(&c);
    let mut c_letters = pi0_letters.clone();
    c_letters.extend(conjugate_into_swapped(&pi0_inv_c, StdInterval::frac(2, 3, 2), i)?);

    Ok(vec![
        GenerationWitness { target: Generator::A, letters: a_letters },
        GenerationWitness { target: Generator::B, letters: vec![letter(LetterTag::Level, b)] },
        GenerationWitness { target: Generator::C, letters: c_letters },
        GenerationWitness { target: Generator::Pi0, letters: pi0_letters },
    ])
}

/// Evidence that V fails the non-containment property at level `i`.
#[derive(Clone, Debug, Serialize)]
pub struct P4Certificate {
    pub i: usize,
    pub c: VElement,
    /// `a_i c a_i⁻¹`
    pub conjugate: VElement,
    pub c_in_level_i: bool,
    pub c_in_level_i_minus_1: bool,
    pub conjugate_in_level_i_plus_1: bool,
}

impl P4Certificate {
    /// Re-derives every flag from the stored elements.
    pub fn recheck(&self) -> bool {
        let a = swap(self.i);
        let conj = a.compose(&self.c).compose(&a.inverse());
        conj == self.conjugate
            && self.c.in_level(self.i)
            && !self.c.in_level(self.i - 1)
            && conj.in_level(self.i + 1)
            && self.c.fixes_pointwise(&StdInterval::frac(0, 3, self.i as u32 + 2))
    }
}

/// `c` swapping the halves of `[3/2^{i+2}, 1/2^i)`; it fixes `[0, 3/2^{i+2})`,
/// lies outside `G_{i-1}`, and `a_i c a_i⁻¹ ∈ G_{i+1}`.
pub fn p4_counterexample(i: usize) -> Result<(VElement, P4Certificate)> {
    if i == 0 {
        return Err(Error::Precondition("p4 counterexample needs i >= 1".into()));
    }
    let k = i as u32 + 3;
    let left = StdInterval::frac(6, 7, k);
    let right = StdInterval::frac(7, 8, k);
    let c = VElement::from_pairs(vec![
        (StdInterval::frac(0, 6, k), StdInterval::frac(0, 6, k)),
        (left, right),
        (right, left),
        (StdInterval::frac(8, 1 << k, k), StdInterval::frac(8, 1 << k, k)),
    ])?;
    let a = swap(i);
    let conjugate = a.compose(&c).compose(&a.inverse());
    let cert = P4Certificate {
        i,
        c_in_level_i: c.in_level(i),
        c_in_level_i_minus_1: c.in_level(i - 1),
        conjugate_in_level_i_plus_1: conjugate.in_level(i + 1),
        c: c.clone(),
        conjugate,
    };
    Ok((c, cert))
}

/// A deterministic product of `depth` letters from `A, B, C, π₀` and inverses.
pub fn random_element(seed: u64, depth: usize) -> VElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<VElement> = [Generator::A, Generator::B, Generator::C, Generator::Pi0]
        .iter()
        .map(|&g| generator(g).expect("named generator"))
        .collect();
    (0..depth).fold(VElement::identity(), |acc, _| {
        let g = &gens[rng.gen_range(0..gens.len())];
        if rng.gen_bool(0.5) {
            acc.compose(g)
        } else {
            acc.compose(&g.inverse())
        }
    })
}

fn random_partition<R: Rng>(start: Vec<StdInterval>, count: usize, rng: &mut R) -> Vec<StdInterval> {
    let mut pieces = start;
    while pieces.len() < count {
        let idx = rng.gen_range(0..pieces.len());
        let (l, r) = pieces[idx].split();
        pieces.splice(idx..=idx, [l, r]);
    }
    pieces
}

/// A random element supported on `[lo, 1)`: both sides of `[lo,1)` are cut
/// into the same number of standard dyadic intervals which are matched by a
/// random bijection. `extra_splits` controls the size of the table.
pub fn random_supported<R: Rng>(lo: Dyadic, extra_splits: usize, rng: &mut R) -> VElement {
    if lo >= Dyadic::ONE {
        return VElement::identity();
    }
    let base = StdInterval::of(lo, Dyadic::ONE).standard_pieces();
    let count = base.len() + extra_splits;
    let src = random_partition(base.clone(), count, rng);
    let mut dst = random_partition(base, count, rng);
    dst.shuffle(rng);
    let mut pairs: Vec<(StdInterval, StdInterval)> = src.into_iter().zip(dst).collect();
    if lo > Dyadic::ZERO {
        let fixed = StdInterval::of(Dyadic::ZERO, lo);
        pairs.push((fixed, fixed));
    }
    VElement::from_pairs(pairs).expect("random table is a valid element")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: i128, k: u32) -> Dyadic {
        Dyadic::new(n, k)
    }

    #[test]
    fn generator_values() {
        let a = generator(Generator::A).unwrap();
        let b = generator(Generator::B).unwrap();
        let c = generator(Generator::C).unwrap();
        let pi0 = generator(Generator::Pi0).unwrap();
        assert_eq!(a.evaluate(d(1, 1)).unwrap(), d(1, 2));
        assert_eq!(pi0.evaluate(Dyadic::ZERO).unwrap(), d(1, 1));
        assert_eq!(swap(1).evaluate(Dyadic::ZERO).unwrap(), d(1, 2));
        assert_eq!(b.evaluate(d(1, 2)).unwrap(), d(1, 2));
        assert_eq!(c.evaluate(d(3, 2)).unwrap(), d(1, 1));
    }

    #[test]
    fn named_lookup() {
        assert_eq!("pi0".parse::<Generator>().unwrap(), Generator::Pi0);
        assert_eq!("a3".parse::<Generator>().unwrap(), Generator::Swap(3));
        assert!("a0".parse::<Generator>().is_err());
        assert!("Z".parse::<Generator>().is_err());
    }

    #[test]
    fn swaps_are_involutions() {
        for i in 1..6 {
            let a = swap(i);
            assert!(a.compose(&a).is_identity());
        }
    }

    #[test]
    fn b_and_pi0_stabilize_the_named_intervals() {
        let b = generator(Generator::B).unwrap();
        let pi0 = generator(Generator::Pi0).unwrap();
        assert!(b.fixes_pointwise(&StdInterval::frac(0, 1, 1)));
        assert!(pi0.fixes_pointwise(&StdInterval::frac(3, 4, 2)));
        assert!(!generator(Generator::A).unwrap().in_level(0));
    }

    #[test]
    fn transporter_examples() {
        let d1 = transporter(StdInterval::frac(3, 4, 2), StdInterval::frac(1, 2, 2), &[StdInterval::frac(0, 1, 2)])
            .unwrap();
        assert_eq!(d1.image_of(&StdInterval::frac(3, 4, 2)), Some(StdInterval::frac(1, 2, 2)));
        assert!(d1.in_level(1));

        let j = StdInterval::frac(3, 5, 3);
        assert!(transporter(j, j, &[]).unwrap().is_identity());

        // slope 3 is impossible
        assert!(transporter(StdInterval::frac(0, 3, 3), StdInterval::frac(0, 1, 3), &[]).is_err());
        // fixed set meeting the source
        assert!(transporter(StdInterval::frac(0, 1, 1), StdInterval::frac(1, 2, 1), &[StdInterval::frac(0, 1, 2)])
            .is_err());
        // the whole line moved onto a half: one complement empty
        assert!(transporter(StdInterval::unit(), StdInterval::unit(), &[]).unwrap().is_identity());
        assert!(transporter(StdInterval::frac(0, 1, 1), StdInterval::unit(), &[]).is_err());
    }

    #[test]
    fn witness_products_reconstruct_targets() {
        for i in 1..=3 {
            for w in generation_witness(i).unwrap() {
                assert_eq!(w.product(), generator(w.target).unwrap(), "i={i} target={}", w.target);
                for l in &w.letters {
                    assert!(letter_in_tag(&l.element, l.tag, i));
                }
            }
        }
    }

    #[test]
    fn p4_examples() {
        let (c, cert) = p4_counterexample(1).unwrap();
        assert_eq!(c.image_of(&StdInterval::frac(6, 7, 4)), Some(StdInterval::frac(7, 8, 4)));
        assert!(cert.recheck());
        let (c2, cert2) = p4_counterexample(2).unwrap();
        assert_eq!(c2.image_of(&StdInterval::frac(6, 7, 5)), Some(StdInterval::frac(7, 8, 5)));
        assert!(c2.fixes_pointwise(&StdInterval::frac(0, 3, 4)));
        assert!(cert2.recheck());
    }

    #[test]
    fn random_elements_are_deterministic() {
        assert!(random_element(11, 0).is_identity());
        assert_eq!(random_element(5, 8), random_element(5, 8));
        random_element(5, 8).check_invariants().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_supported(d(1, 3), 4, &mut rng);
            g.check_invariants().unwrap();
            assert!(g.in_level(2));
        }
    }
}
