//! Dense bit vectors and elimination over the two-element field.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { words: vec![0; len.div_ceil(64)] }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Row-echelon basis of a subspace, keyed by pivot position.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new() -> EchelonBasis {
        EchelonBasis::default()
    }

    fn reduce(&self, mut v: BitVec) -> BitVec {
        // rows are kept sorted by descending pivot
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        match v.leading() {
            None => false,
            Some(p) => {
                let at = self.rows.partition_point(|(q, _)| *q > p);
                self.rows.insert(at, (p, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`,
/// returned as vectors of length `images.len()`.
pub fn kernel(images: &[BitVec]) -> Vec<BitVec> {
    let n = images.len();
    // (image, combination) pairs; eliminate on the image part.
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = BitVec::zeros(n);
        combo.flip(j);
        loop {
            match v.leading() {
                None => {
                    out.push(combo);
                    break;
                }
                Some(p) => match pivots.iter().find(|(q, _, _)| *q == p) {
                    Some((_, row, rc)) => {
                        v.xor_assign(row);
                        combo.xor_assign(rc);
                    }
                    None => {
                        pivots.push((p, v, combo));
                        break;
                    }
                },
            }
        }
    }
    out
}
