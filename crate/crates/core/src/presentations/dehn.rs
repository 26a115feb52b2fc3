//! Dehn's algorithm for closed orientable surface groups of genus at least two.
//!
//! The relator `[x₁,x₂]⋯[x_{2g−1},x_{2g}]` satisfies C'(1/6) for g ≥ 2, so a
//! freely reduced word is trivial iff repeatedly replacing more than half of a
//! cyclic conjugate of the relator (or its inverse) by the inverse of the
//! remaining part ends at the empty word.

use crate::words::{Letter, Word};

#[derive(Debug, Clone)]
pub struct SurfaceGroup {
    genus: usize,
    /// All cyclic conjugates of the relator and of its inverse.
    rotations: Vec<Vec<Letter>>,
}

impl SurfaceGroup {
    /// `None` for genus below two, where Dehn's algorithm does not apply.
    pub fn new(genus: usize) -> Option<Self> {
        if genus < 2 {
            return None;
        }
        let r = Word::surface_relator(genus);
        let mut rotations = Vec::with_capacity(8 * genus);
        for base in [r.letters().to_vec(), r.inverse().letters().to_vec()] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                rotations.push(rot);
            }
        }
        Some(SurfaceGroup { genus, rotations })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> Word {
        Word::surface_relator(self.genus)
    }

    fn relator_len(&self) -> usize {
        4 * self.genus
    }

    /// Finds a subword starting at `start` that is more than half of a relator
    /// rotation; returns its length and the rotation.
    fn long_piece_at(&self, letters: &[Letter], start: usize) -> Option<(usize, &[Letter])> {
        let half = self.relator_len() / 2;
        self.rotations.iter().find_map(|rot| {
            let l = letters[start..].iter().zip(rot).take_while(|(a, b)| a == b).count();
            (l > half).then_some((l, rot.as_slice()))
        })
    }

    fn replace(letters: &[Letter], start: usize, len: usize, rot: &[Letter]) -> Word {
        let complement = rot[len..].iter().rev().map(|l| l.inv());
        Word::reduce(
            letters[..start]
                .iter()
                .copied()
                .chain(complement)
                .chain(letters[start + len..].iter().copied()),
        )
    }

    /// One Dehn replacement on the linear word, if any applies.
    fn step(&self, w: &Word) -> Option<Word> {
        let l = w.letters();
        (0..l.len()).find_map(|i| self.long_piece_at(l, i).map(|(len, rot)| Self::replace(l, i, len, rot)))
    }

    /// Dehn-reduces `w`; the result is shortest among the words reachable by replacements.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut cur = w.clone();
        while let Some(next) = self.step(&cur) {
            debug_assert!(next.len() < cur.len());
            cur = next;
        }
        cur
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.reduce(w).is_identity()
    }

    /// A cyclically reduced word conjugate to `w` in the surface group to which
    /// no Dehn replacement applies, even across the wrap-around.
    pub fn cyclic_core(&self, w: &Word) -> Word {
        let mut cur = self.reduce(w).cyclic_reduce().1.to_word();
        'outer: loop {
            let n = cur.len();
            for k in 0..n {
                let mut rot = cur.letters()[k..].to_vec();
                rot.extend_from_slice(&cur.letters()[..k]);
                let rot = Word::reduce(rot);
                if let Some(next) = self.step(&rot) {
                    cur = self.reduce(&next).cyclic_reduce().1.to_word();
                    continue 'outer;
                }
            }
            return cur;
        }
    }
}

/// Whether `w` is trivial in the genus-`genus` surface group (genus ≥ 2).
pub fn dehn_trivial(w: &Word, genus: usize) -> bool {
    SurfaceGroup::new(genus).expect("Dehn's algorithm needs genus >= 2").is_trivial(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
        Word::reduce((0..len).map(|_| Letter { generator: rng.gen_range(0..rank), inverse: rng.gen() }))
    }

    #[test]
    fn relator_is_trivial() {
        for g in 2..=4 {
            assert!(dehn_trivial(&Word::surface_relator(g), g));
            assert!(dehn_trivial(&Word::surface_relator(g).inverse(), g));
        }
    }

    #[test]
    fn generators_survive() {
        for g in 2..=3 {
            for i in 0..2 * g {
                assert!(!dehn_trivial(&Word::generator(i), g));
                assert!(!dehn_trivial(&Word::generator(i).pow(5), g));
            }
        }
    }

    #[test]
    fn normal_closure_products_are_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in 2..=3 {
            let s = SurfaceGroup::new(g).unwrap();
            let r = s.relator();
            for _ in 0..300 {
                let k = rng.gen_range(1..=3);
                let w = (0..k).fold(Word::identity(), |acc, _| {
                    let len = rng.gen_range(0..10);
                    let c = random_word(&mut rng, 2 * g, len);
                    let rel = if rng.gen() { r.clone() } else { r.inverse() };
                    acc.multiply(&c.multiply(&rel).multiply(&c.inverse()))
                });
                assert!(s.is_trivial(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn half_relator_swaps_for_its_complement() {
        let s = SurfaceGroup::new(2).unwrap();
        let r = s.relator();
        // five letters of an eight-letter relator become the inverse of the other three
        let head = Word::reduce(r.letters()[..5].iter().copied());
        let tail = Word::reduce(r.letters()[5..].iter().copied());
        assert_eq!(s.reduce(&head), tail.inverse());
        assert!(s.is_trivial(&head.multiply(&tail)));
    }

    #[test]
    fn cyclic_core_is_conjugate_and_short() {
        let s = SurfaceGroup::new(2).unwrap();
        let r = s.relator();
        let c = Word::generator(2);
        // c · x1^2 r · c⁻¹ is conjugate in S to x1^2
        let w = c.multiply(&Word::generator(0).pow(2)).multiply(&r).multiply(&c.inverse());
        let core = s.cyclic_core(&w);
        assert_eq!(core, Word::generator(0).pow(2));
    }
}
