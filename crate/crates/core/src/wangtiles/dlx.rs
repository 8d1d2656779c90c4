//! Exact cover with colors (Knuth's Algorithm C) over dancing links.
//!
//! Primary items must be covered exactly once. Secondary items may be
//! covered any number of times provided every option touching them agrees
//! on the color.

pub type Color = u32;

#[derive(Debug, Clone)]
pub struct Xcc {
    n_primary: usize,
    n_items: usize,
    // item headers live at 1..=n_items; 0 and n_items+1 are list heads
    llink: Vec<usize>,
    rlink: Vec<usize>,
    // node arrays (headers share the same index space)
    top: Vec<isize>,
    ulink: Vec<usize>,
    dlink: Vec<usize>,
    color: Vec<i64>,
    len: Vec<usize>,
    option_of: Vec<usize>,
    n_options: usize,
}

impl Xcc {
    pub fn new(n_primary: usize, n_secondary: usize) -> Self {
        let n_items = n_primary + n_secondary;
        let mut llink = vec![0; n_items + 2];
        let mut rlink = vec![0; n_items + 2];
        // primary list headed by 0
        for i in 1..=n_primary {
            llink[i] = i - 1;
            rlink[i - 1] = i;
        }
        llink[0] = n_primary;
        rlink[n_primary] = 0;
        // secondary list headed by n_items + 1
        let head = n_items + 1;
        let mut prev = head;
        for (i, l) in llink.iter_mut().enumerate().take(n_items + 1).skip(n_primary + 1) {
            *l = prev;
            rlink[prev] = i;
            prev = i;
        }
        llink[head] = prev;
        rlink[prev] = head;

        let nodes = n_items + 2;
        let mut ulink = vec![0; nodes];
        let mut dlink = vec![0; nodes];
        for i in 0..nodes {
            ulink[i] = i;
            dlink[i] = i;
        }
        // first spacer
        let top = vec![0isize; nodes];
        Xcc {
            n_primary,
            n_items,
            llink,
            rlink,
            top,
            ulink,
            dlink,
            color: vec![0; nodes],
            len: vec![0; nodes],
            option_of: vec![usize::MAX; nodes],
            n_options: 0,
        }
    }

    fn spacer_index(&self) -> usize {
        self.top.len() - 1
    }

    /// Add an option made of `(item, color)` pairs; items are 0-based, primary
    /// items first. Primary items must carry no color.
    pub fn add_option(&mut self, items: &[(usize, Option<Color>)]) -> usize {
        if items.is_empty() {
            return self.n_options;
        }
        let id = self.n_options;
        self.n_options += 1;
        // the last node pushed so far is the current spacer
        let spacer = self.spacer_index();
        let first = self.top.len();
        for &(item, c) in items {
            debug_assert!(item < self.n_items);
            debug_assert!(item >= self.n_primary || c.is_none());
            let i = item + 1;
            let x = self.top.len();
            self.top.push(i as isize);
            self.option_of.push(id);
            self.color.push(c.map_or(0, |c| c as i64 + 1));
            self.len.push(0);
            let last = self.ulink[i];
            self.ulink.push(last);
            self.dlink.push(i);
            self.dlink[last] = x;
            self.ulink[i] = x;
            self.len[i] += 1;
        }
        let last = self.top.len() - 1;
        self.dlink[spacer] = last;
        // new spacer after this option
        self.top.push(-(id as isize) - 1);
        self.option_of.push(usize::MAX);
        self.color.push(0);
        self.len.push(0);
        self.ulink.push(first);
        self.dlink.push(0);
        id
    }

    fn hide(&mut self, p: usize) {
        let mut q = p + 1;
        while q != p {
            let x = self.top[q];
            let u = self.ulink[q];
            let d = self.dlink[q];
            if x <= 0 {
                q = u;
            } else {
                if self.color[q] >= 0 {
                    self.dlink[u] = d;
                    self.ulink[d] = u;
                    self.len[x as usize] -= 1;
                }
                q += 1;
            }
        }
    }

    fn unhide(&mut self, p: usize) {
        let mut q = p - 1;
        while q != p {
            let x = self.top[q];
            let u = self.ulink[q];
            let d = self.dlink[q];
            if x <= 0 {
                q = d;
            } else {
                if self.color[q] >= 0 {
                    self.dlink[u] = q;
                    self.ulink[d] = q;
                    self.len[x as usize] += 1;
                }
                q -= 1;
            }
        }
    }

    fn cover(&mut self, i: usize) {
        let mut p = self.dlink[i];
        while p != i {
            self.hide(p);
            p = self.dlink[p];
        }
        let (l, r) = (self.llink[i], self.rlink[i]);
        self.rlink[l] = r;
        self.llink[r] = l;
    }

    fn uncover(&mut self, i: usize) {
        let (l, r) = (self.llink[i], self.rlink[i]);
        self.rlink[l] = i;
        self.llink[r] = i;
        let mut p = self.ulink[i];
        while p != i {
            self.unhide(p);
            p = self.ulink[p];
        }
    }

    fn purify(&mut self, p: usize) {
        let c = self.color[p];
        let i = self.top[p] as usize;
        self.color[i] = c;
        let mut q = self.dlink[i];
        while q != i {
            if self.color[q] == c {
                self.color[q] = -1;
            } else {
                self.hide(q);
            }
            q = self.dlink[q];
        }
    }

    fn unpurify(&mut self, p: usize) {
        let c = self.color[p];
        let i = self.top[p] as usize;
        let mut q = self.ulink[i];
        while q != i {
            if self.color[q] < 0 {
                self.color[q] = c;
            } else {
                self.unhide(q);
            }
            q = self.ulink[q];
        }
    }

    fn commit(&mut self, p: usize) {
        let j = self.top[p] as usize;
        if self.color[p] == 0 {
            self.cover(j);
        } else if self.color[p] > 0 {
            self.purify(p);
        }
    }

    fn uncommit(&mut self, p: usize) {
        let j = self.top[p] as usize;
        if self.color[p] == 0 {
            self.uncover(j);
        } else if self.color[p] > 0 {
            self.unpurify(p);
        }
    }

    fn search(&mut self, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.rlink[0] == 0 {
            let opts: Vec<usize> = chosen.iter().map(|&x| self.option_of[x]).collect();
            return visit(&opts);
        }
        // minimum remaining values
        let mut best = self.rlink[0];
        let mut i = best;
        while i != 0 {
            if self.len[i] < self.len[best] {
                best = i;
            }
            i = self.rlink[i];
        }
        if self.len[best] == 0 {
            return false;
        }
        self.cover(best);
        let mut x = self.dlink[best];
        let mut stop = false;
        while x != best {
            let mut p = x + 1;
            while p != x {
                if self.top[p] <= 0 {
                    p = self.ulink[p];
                } else {
                    self.commit(p);
                    p += 1;
                }
            }
            chosen.push(x);
            stop = self.search(chosen, visit);
            chosen.pop();
            let mut p = x - 1;
            while p != x {
                if self.top[p] <= 0 {
                    p = self.dlink[p];
                } else {
                    self.uncommit(p);
                    p -= 1;
                }
            }
            if stop {
                break;
            }
            x = self.dlink[x];
        }
        self.uncover(best);
        stop
    }

    /// Visit solutions as lists of option ids until `visit` returns true.
    pub fn for_each_solution(&mut self, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.n_primary == 0 {
            visit(&[]);
            return;
        }
        let mut chosen = Vec::new();
        self.search(&mut chosen, &mut visit);
    }

    pub fn first_solution(&mut self) -> Option<Vec<usize>> {
        let mut out = None;
        self.for_each_solution(|s| {
            let mut s = s.to_vec();
            s.sort_unstable();
            out = Some(s);
            true
        });
        out
    }

    pub fn count_solutions(&mut self, limit: usize) -> usize {
        let mut n = 0;
        self.for_each_solution(|_| {
            n += 1;
            n >= limit
        });
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_exact_cover_example() {
        // items a..g, options from TAOCP 7.2.2.1 (6)
        let opts: [&[usize]; 6] = [&[2, 4], &[0, 3, 6], &[1, 2, 5], &[0, 3, 5], &[1, 6], &[3, 4, 6]];
        let mut x = Xcc::new(7, 0);
        for o in opts {
            let items: Vec<(usize, Option<Color>)> = o.iter().map(|&i| (i, None)).collect();
            x.add_option(&items);
        }
        assert_eq!(x.first_solution(), Some(vec![0, 3, 4]));
        assert_eq!(x.count_solutions(10), 1);
    }

    #[test]
    fn colors_must_agree() {
        // two primaries p0,p1 and one secondary s with colors
        let mut x = Xcc::new(2, 1);
        x.add_option(&[(0, None), (2, Some(1))]);
        x.add_option(&[(1, None), (2, Some(2))]);
        assert_eq!(x.first_solution(), None);
        x.add_option(&[(1, None), (2, Some(1))]);
        assert_eq!(x.first_solution(), Some(vec![0, 2]));
    }
}
