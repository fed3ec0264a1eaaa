/// Enumerates assignments `x_v ∈ 0..domain[v]` such that `map[x_u] == x_v`
/// for every edge `(u, v, map)`, in lexicographic order.
///
/// Branches only on nodes not forced by earlier choices; nodes that reach
/// many others are tried first so that an initial node settles everything.
pub(crate) fn compatible_families(domains: &[usize], edges: &[(usize, usize, &[u32])]) -> Vec<Vec<u32>> {
    let n = domains.len();
    if domains.contains(&0) {
        return Vec::new();
    }
    let mut out: Vec<Vec<(usize, &[u32])>> = vec![Vec::new(); n];
    for &(u, v, map) in edges {
        out[u].push((v, map));
    }
    let order = branching_order(&out);
    let mut s = Solver {
        domains,
        out,
        order,
        value: vec![UNSET; n],
        trail: Vec::new(),
        found: Vec::new(),
    };
    s.search(0);
    s.found.sort_unstable();
    s.found
}

const UNSET: u32 = u32::MAX;

fn branching_order(out: &[Vec<(usize, &[u32])>]) -> Vec<usize> {
    let n = out.len();
    let mut reach = vec![0usize; n];
    let mut seen = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for s in 0..n {
        stack.push(s);
        seen[s] = s;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            count += 1;
            for &(v, _) in &out[u] {
                if seen[v] != s {
                    seen[v] = s;
                    stack.push(v);
                }
            }
        }
        reach[s] = count;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(reach[v]), v));
    order
}

struct Solver<'a> {
    domains: &'a [usize],
    out: Vec<Vec<(usize, &'a [u32])>>,
    order: Vec<usize>,
    value: Vec<u32>,
    trail: Vec<usize>,
    found: Vec<Vec<u32>>,
}

impl Solver<'_> {
    fn search(&mut self, mut pos: usize) {
        while pos < self.order.len() && self.value[self.order[pos]] != UNSET {
            pos += 1;
        }
        if pos == self.order.len() {
            self.found.push(self.value.clone());
            return;
        }
        let node = self.order[pos];
        for v in 0..self.domains[node] as u32 {
            let mark = self.trail.len();
            if self.assign(node, v) {
                self.search(pos + 1);
            }
            while self.trail.len() > mark {
                let u = self.trail.pop().unwrap();
                self.value[u] = UNSET;
            }
        }
    }

    fn assign(&mut self, node: usize, v: u32) -> bool {
        self.value[node] = v;
        self.trail.push(node);
        let mut queue = vec![node];
        while let Some(u) = queue.pop() {
            let x = self.value[u] as usize;
            for i in 0..self.out[u].len() {
                let (w, map) = self.out[u][i];
                let y = map[x];
                match self.value[w] {
                    UNSET => {
                        self.value[w] = y;
                        self.trail.push(w);
                        queue.push(w);
                    }
                    z if z != y => return false,
                    _ => {}
                }
            }
        }
        true
    }
}
