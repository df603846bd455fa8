//! 1-line ORBGRAND query order.

use super::landslide::Landslide;
use super::PatternSource;

/// Noise effects in non-decreasing total weight `c * w_H + w_L`.
///
/// The all-zero pattern comes first. For each total weight, feasible Hamming
/// weights are visited in ascending order and each `(w_H, w_L)` pair is
/// expanded by [`Landslide`]. With `c = 0` this is basic ORBGRAND (order by
/// logistic weight alone).
#[derive(Debug, Clone)]
pub struct OneLineGenerator {
    n: u32,
    c: u32,
    w_t: u32,
    w_h: u32,
    max_w_t: u32,
    inner: Landslide,
    started: bool,
    done: bool,
}

impl OneLineGenerator {
    pub fn new(n: usize, c: u32) -> Self {
        assert!(
            n >= 1 && n <= u16::MAX as usize,
            "pattern length {n} unsupported"
        );
        let n32 = n as u32;
        OneLineGenerator {
            n: n32,
            c,
            w_t: c,
            w_h: 0,
            max_w_t: c * n32 + n32 * (n32 + 1) / 2,
            inner: Landslide::new(0, 0, n),
            started: false,
            done: false,
        }
    }

    /// Basic ORBGRAND: reliabilities modelled by a line through the origin.
    pub fn basic(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Largest total weight reachable with `w` flips.
    #[inline]
    fn max_total(&self, w: u32) -> u32 {
        self.c * w + w * (2 * self.n + 1 - w) / 2
    }

    /// Smallest Hamming weight that can still reach total weight `w_t`.
    fn first_hamming_weight(&self, w_t: u32) -> u32 {
        let b = 1.0 + 2.0 * f64::from(self.n + self.c);
        let disc = (b * b - 8.0 * f64::from(w_t)).max(0.0);
        let mut w = (((b - disc.sqrt()) / 2.0).ceil() as u32).clamp(1, self.n);
        // float guard
        while w > 1 && self.max_total(w - 1) >= w_t {
            w -= 1;
        }
        while w < self.n && self.max_total(w) < w_t {
            w += 1;
        }
        w
    }

    /// Moves to the next `(w_H, w_L)` pair with at least one pattern.
    fn next_pair(&mut self) -> bool {
        loop {
            if self.w_h >= 1 && self.w_h < self.n {
                let w_h = self.w_h + 1;
                let w_l = i64::from(self.w_t) - i64::from(self.c) * i64::from(w_h);
                if w_l > 0 && w_l >= i64::from(w_h * (w_h + 1) / 2) {
                    self.w_h = w_h;
                    self.inner.reset(w_h as usize, w_l as u32, self.n as usize);
                    return true;
                }
            }
            // next total weight
            self.w_t += 1;
            if self.w_t > self.max_w_t {
                return false;
            }
            let w_h = self.first_hamming_weight(self.w_t);
            let w_l = i64::from(self.w_t) - i64::from(self.c) * i64::from(w_h);
            if w_l <= 0 || w_l < i64::from(w_h * (w_h + 1) / 2) {
                // no pair at this total weight
                self.w_h = 0;
                continue;
            }
            self.w_h = w_h;
            self.inner.reset(w_h as usize, w_l as u32, self.n as usize);
            return true;
        }
    }

    /// Total weight of the pattern most recently returned.
    pub fn current_total_weight(&self) -> u32 {
        if self.w_h == 0 {
            0
        } else {
            self.w_t
        }
    }
}

impl PatternSource for OneLineGenerator {
    fn next_pattern(&mut self) -> Option<&[u16]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&[]);
        }
        loop {
            if self.w_h > 0 && self.inner.next_pattern().is_some() {
                break;
            }
            if !self.next_pair() {
                self.done = true;
                return None;
            }
        }
        Some(self.inner.current_slice())
    }
}
