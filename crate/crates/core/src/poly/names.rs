/// Variable naming for printing and parsing.
///
/// Points of Xᵏ use one letter per factor: `x1..xn` for the first, `y1..yn` for
/// the second, `z1..zn` for the third, then `w`, `u`, `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

const BLOCK_LETTERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

impl VarNames {
    pub fn flat(arity: usize) -> Self {
        VarNames { names: (1..=arity).map(|i| format!("x{}", i)).collect() }
    }

    /// Names for `blocks` copies of an `n`-dimensional space.
    pub fn blocks(n: usize, blocks: usize) -> Self {
        assert!(blocks <= BLOCK_LETTERS.len(), "too many factor blocks");
        let mut names = Vec::with_capacity(n * blocks);
        for letter in BLOCK_LETTERS.iter().take(blocks) {
            for i in 1..=n {
                names.push(format!("{}{}", letter, i));
            }
        }
        VarNames { names }
    }

    pub fn custom(names: Vec<String>) -> Self {
        VarNames { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("_v{}", i + 1))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
