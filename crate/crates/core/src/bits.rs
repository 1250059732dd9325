//! Dense row-major bit matrix used for graph adjacency.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn count_ones(&self) -> u64 {
        self.data.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in ones(self.row(r)) {
                t.set(c, r);
            }
        }
        t
    }

    /// Set positions `(r, c)` in row-major order.
    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| ones(self.row(r)).map(move |c| (r, c)))
    }
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}

/// Indices of set bits, ascending.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

/// Indices of bits set in both `a` and `b`, ascending.
pub(crate) fn and_ones<'a>(a: &'a [u64], b: &'a [u64]) -> impl Iterator<Item = usize> + 'a {
    a.iter().zip(b).enumerate().flat_map(|(i, (&x, &y))| {
        let mut w = x & y;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_transpose() {
        let mut m = BitMatrix::new(3, 130);
        m.set(0, 0);
        m.set(1, 64);
        m.set(2, 129);
        assert!(m.get(1, 64) && !m.get(1, 63));
        assert_eq!(m.count_ones(), 3);
        assert_eq!(
            m.iter_ones().collect::<Vec<_>>(),
            vec![(0, 0), (1, 64), (2, 129)]
        );
        let t = m.transpose();
        assert!(t.get(129, 2) && t.get(64, 1));
        assert_eq!(t.count_ones(), 3);
    }

    #[test]
    fn word_intersections() {
        let a = [0b1011u64, 1 << 63];
        let b = [0b0110u64, 1 << 63];
        assert_eq!(and_count(&a, &b), 2);
        assert_eq!(and_ones(&a, &b).collect::<Vec<_>>(), vec![1, 127]);
        assert_eq!(ones(&a).collect::<Vec<_>>(), vec![0, 1, 3, 127]);
    }
}
