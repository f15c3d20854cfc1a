use super::{bit, check_arity, Partition, PartitionError};

/// Iterator over all set partitions of `{1..n}` in restricted-growth-string
/// order.
pub struct SetPartitions {
    labels: Vec<usize>,
    // maxima[i] = max(labels[0..i])
    maxima: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        SetPartitions { labels: vec![0; n], maxima: vec![0; n], done: false }
    }

    fn advance(&mut self) {
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.maxima[i - 1] {
                self.labels[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxima[j] = self.maxima[j - 1];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let p = Partition::from_labels(&self.labels, 0).expect("growth strings are valid");
        self.advance();
        Some(p)
    }
}

/// Every partition of `{1..n}` exactly once.
pub fn all_partitions(n: usize, cap: usize) -> Result<SetPartitions, PartitionError> {
    check_arity(n)?;
    if n > cap {
        return Err(PartitionError::CapExceeded { arity: n, cap });
    }
    Ok(SetPartitions::new(n))
}

/// Every partition of `{1..n}` paired with every admissible checked set.
pub struct PolarizedPartitions {
    shapes: SetPartitions,
    intuitionistic_only: bool,
    current: Option<Partition>,
    patterns: Vec<u32>,
    next_pattern: usize,
}

impl PolarizedPartitions {
    fn load(&mut self) -> bool {
        match self.shapes.next() {
            None => false,
            Some(p) => {
                self.patterns = if self.intuitionistic_only {
                    intuitionistic_patterns(&p)
                } else {
                    (0..1u32 << p.arity()).collect()
                };
                self.patterns.sort_unstable();
                self.current = Some(p);
                self.next_pattern = 0;
                true
            }
        }
    }
}

fn intuitionistic_patterns(p: &Partition) -> Vec<u32> {
    let mut out = vec![0u32];
    for &class in p.class_masks() {
        let mut next = Vec::with_capacity(out.len() * (class.count_ones() as usize + 1));
        for &acc in &out {
            next.push(acc);
            for e in super::elements(class) {
                next.push(acc | bit(e));
            }
        }
        out = next;
    }
    out
}

impl Iterator for PolarizedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if let Some(p) = &self.current {
                if self.next_pattern < self.patterns.len() {
                    let q = p.with_checked(self.patterns[self.next_pattern]);
                    self.next_pattern += 1;
                    return Some(q);
                }
            }
            if !self.load() {
                return None;
            }
        }
    }
}

/// Polarized partitions of `{1..n}`. With `intuitionistic_only`, only
/// checked sets with at most one element per class are produced.
pub fn all_polarized_partitions(
    n: usize,
    intuitionistic_only: bool,
    cap: usize,
) -> Result<PolarizedPartitions, PartitionError> {
    let shapes = all_partitions(n, cap)?;
    Ok(PolarizedPartitions { shapes, intuitionistic_only, current: None, patterns: Vec::new(), next_pattern: 0 })
}

/// Bell numbers by the Bell triangle.
pub fn bell_number(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}
