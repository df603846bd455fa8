//! Enumeration of fixed-size subsets of `{1..n}` with a fixed element sum.

use super::PatternSource;

/// Streams every strictly increasing `w_h`-subset of `{1..n}` whose elements
/// sum to `w_l`, each exactly once, in lexicographic order.
///
/// The successor step bumps the rightmost element (other than the last, which
/// the sum pins) that still admits a completion, then refills the suffix with
/// its lexicographically smallest completion. Each step is `O(w_h)`.
#[derive(Debug, Clone)]
pub struct Landslide {
    n: u32,
    w_h: usize,
    w_l: u32,
    current: Vec<u16>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Largest sum of `m` distinct elements of `{1..n}`.
#[inline]
fn max_sum(m: u32, n: u32) -> u32 {
    m * n - m * m.saturating_sub(1) / 2
}

/// Smallest sum of `m` distinct elements all greater than `floor`.
#[inline]
fn min_sum_above(m: u32, floor: u32) -> u32 {
    m * floor + m * (m + 1) / 2
}

impl Landslide {
    pub fn new(w_h: usize, w_l: u32, n: usize) -> Self {
        let mut ls = Landslide {
            n: n as u32,
            w_h,
            w_l,
            current: Vec::with_capacity(w_h),
            state: State::Fresh,
        };
        if !Self::feasible(w_h, w_l, n) {
            ls.state = State::Done;
        }
        ls
    }

    /// Whether any subset matches the pair.
    pub fn feasible(w_h: usize, w_l: u32, n: usize) -> bool {
        let (w, n) = (w_h as u32, n as u32);
        w >= 1 && w <= n && w_l >= min_sum_above(w, 0) && w_l <= max_sum(w, n)
    }

    pub(crate) fn current_slice(&self) -> &[u16] {
        &self.current
    }

    /// Re-targets the enumerator without reallocating.
    pub fn reset(&mut self, w_h: usize, w_l: u32, n: usize) {
        self.n = n as u32;
        self.w_h = w_h;
        self.w_l = w_l;
        self.current.clear();
        self.state = if Self::feasible(w_h, w_l, n) {
            State::Fresh
        } else {
            State::Done
        };
    }

    /// Fills `current[from..]` with the smallest increasing completion whose
    /// elements exceed `prev` and sum to `rem`.
    fn fill(&mut self, from: usize, mut prev: u32, mut rem: u32) {
        self.current.truncate(from);
        let w = self.w_h;
        for j in from..w {
            let after = (w - 1 - j) as u32;
            let v = if after == 0 {
                rem
            } else {
                (prev + 1).max(rem.saturating_sub(max_sum(after, self.n)))
            };
            self.current.push(v as u16);
            prev = v;
            rem -= v;
        }
    }

    fn advance(&mut self) -> bool {
        let w = self.w_h;
        let mut suffix: u32 = u32::from(self.current[w - 1]);
        for i in (0..w.saturating_sub(1)).rev() {
            suffix += u32::from(self.current[i]);
            let v = u32::from(self.current[i]) + 1;
            let after = (w - 1 - i) as u32;
            if v + after > self.n {
                continue;
            }
            let rem = suffix - v;
            if rem >= min_sum_above(after, v) {
                self.current[i] = v as u16;
                self.fill(i + 1, v, rem);
                return true;
            }
        }
        false
    }
}

impl PatternSource for Landslide {
    fn next_pattern(&mut self) -> Option<&[u16]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.fill(0, 0, self.w_l);
                self.state = State::Running;
            }
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                    return None;
                }
            }
        }
        Some(&self.current)
    }
}
