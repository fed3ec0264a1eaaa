/// Disjoint sets over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns whether the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// For every element, the smallest element of its class.
    pub fn classes(&mut self) -> Vec<usize> {
        let n = self.len();
        let mut least = vec![usize::MAX; n];
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
            out[x] = least[r];
        }
        out
    }

    /// Dense class numbers `0..k` in order of each class's smallest element,
    /// together with `k`.
    pub fn numbering(&mut self) -> (Vec<u32>, usize) {
        let n = self.len();
        let mut number = vec![u32::MAX; n];
        let mut out = vec![0; n];
        let mut k = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if number[r] == u32::MAX {
                number[r] = k;
                k += 1;
            }
            out[x] = number[r];
        }
        (out, k as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_use_smallest_member() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(3, 1);
        uf.union(1, 4);
        assert_eq!(uf.classes(), vec![0, 1, 1, 1, 1]);
        assert_eq!(uf.numbering(), (vec![0, 1, 1, 1, 1], 2));
    }
}
