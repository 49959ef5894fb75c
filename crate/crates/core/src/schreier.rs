//! Deterministic Schreier–Sims stabilizer chain.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    generators: Vec<Permutation>,
    /// `transversal[pt]` maps the base point to `pt`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            generators: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            for g in &self.generators {
                let next = g.apply(pt);
                if self.transversal[next].is_none() {
                    let u = g.compose_unchecked(self.transversal[pt].as_ref().unwrap());
                    self.transversal[next] = Some(u);
                    self.orbit.push(next);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            let (residue, depth) = chain.strip(g.clone(), 0);
            if !residue.is_identity() {
                chain.insert(residue, depth);
            }
        }
        chain.complete();
        chain
    }

    /// Adds a strong generator to every level up to `depth`, growing the base if needed.
    fn insert(&mut self, g: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let moved = (0..self.degree).find(|&x| g.apply(x) != x).unwrap();
            self.levels.push(Level::new(moved, self.degree));
        }
        for level in &mut self.levels[..=depth] {
            level.generators.push(g.clone());
        }
        for level in &mut self.levels[..=depth] {
            level.rebuild_orbit(self.degree);
        }
    }

    /// Sifts `g` from level `from`; returns the residue and the level where sifting stopped.
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (depth, level) in self.levels.iter().enumerate().skip(from) {
            let pt = g.apply(level.base);
            match &level.transversal[pt] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return (g, depth),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    /// Runs Schreier generator tests from the deepest level up until nothing changes.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let depth = i - 1;
            let mut added = None;
            'search: for &pt in &self.levels[depth].orbit {
                let u = self.levels[depth].transversal[pt].as_ref().unwrap();
                for s in &self.levels[depth].generators {
                    let su = s.compose_unchecked(u);
                    let v = self.levels[depth].transversal[s.apply(pt)]
                        .as_ref()
                        .unwrap();
                    let schreier = v.inverse().compose_unchecked(&su);
                    let (residue, stop) = self.strip(schreier, depth + 1);
                    if !residue.is_identity() {
                        added = Some((residue, stop));
                        break 'search;
                    }
                }
            }
            match added {
                Some((residue, stop)) => {
                    self.insert(residue, stop);
                    i = stop + 1;
                }
                None => i -= 1,
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Every element, as products of transversal elements down the chain.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &pt in &level.orbit {
                let u = level.transversal[pt].as_ref().unwrap();
                for g in &out {
                    next.push(u.compose_unchecked(g));
                }
            }
            out = next;
        }
        out
    }
}
