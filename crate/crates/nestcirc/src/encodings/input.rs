use crate::error::{Error, Result};
use crate::qbf::{Qbf, Quant};
use crate::semantics::Interp;
use crate::syntax::{parse_lcirc, Alphabet, Atom, Formula};

/// A prenex QBF `Q_n X_n ... ∃X_1 ψ` with named variables. Matrix atoms
/// outside every block are free parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrenexQbf {
    pub alphabet: Alphabet,
    /// Quantifier blocks, outermost first.
    pub blocks: Vec<(Quant, Vec<Atom>)>,
    pub matrix: Formula,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        col: 1,
        msg: msg.into(),
    }
}

impl PrenexQbf {
    /// Parses `forall x1 x2; exists y1; matrix <formula>`.
    ///
    /// Only the outermost block may be empty.
    pub fn parse(text: &str) -> Result<PrenexQbf> {
        let stripped: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let pos = find_word(&stripped, "matrix").ok_or_else(|| parse_err("expected `matrix`"))?;
        let (head, tail) = stripped.split_at(pos);
        let mut alphabet = Alphabet::new();
        let mut blocks = Vec::new();
        for part in head.split(';') {
            let mut words = part.split_whitespace();
            let Some(kw) = words.next() else { continue };
            let kind = match kw {
                "forall" => Quant::Forall,
                "exists" => Quant::Exists,
                other => {
                    return Err(parse_err(format!(
                        "expected `forall` or `exists`, found `{other}`"
                    )))
                }
            };
            let mut vars = Vec::new();
            for w in words {
                let w = w.trim_end_matches(',');
                if w.is_empty() {
                    continue;
                }
                if alphabet.get(w).is_some() {
                    return Err(Error::semantic(format!("variable {w} is quantified twice")));
                }
                vars.push(alphabet.intern(w));
            }
            blocks.push((kind, vars));
        }
        let matrix_text = tail["matrix".len()..].trim().trim_end_matches(';');
        let matrix = parse_lcirc(matrix_text, &mut alphabet)?;
        if !matrix.is_propositional() {
            return Err(Error::semantic("matrix must be propositional"));
        }
        let q = PrenexQbf {
            alphabet,
            blocks,
            matrix,
        };
        q.check_shape()?;
        Ok(q)
    }

    fn check_shape(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::semantic("at least one quantifier block is required"));
        }
        for (i, (_, vars)) in self.blocks.iter().enumerate() {
            if vars.is_empty() && i > 0 {
                return Err(Error::semantic(
                    "only the outermost quantifier block may be empty",
                ));
            }
        }
        for w in self.blocks.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::semantic("quantifier blocks must alternate"));
            }
        }
        if self.blocks.last().unwrap().0 != Quant::Exists {
            return Err(Error::semantic(
                "the innermost quantifier block must be existential",
            ));
        }
        Ok(())
    }

    /// Number of quantifier blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Block `X_i` (1-based from the inside).
    pub fn x(&self, i: usize) -> &[Atom] {
        &self.blocks[self.blocks.len() - i].1
    }

    pub fn params(&self) -> Vec<Atom> {
        self.matrix
            .atoms()
            .into_iter()
            .filter(|a| self.blocks.iter().all(|(_, vs)| !vs.contains(a)))
            .collect()
    }

    pub fn to_qbf(&self) -> Qbf {
        let mut q = Qbf::from_formula(&self.matrix);
        for (kind, vars) in self.blocks.iter().rev() {
            q = match kind {
                Quant::Forall => Qbf::forall(vars.clone(), q),
                Quant::Exists => Qbf::exists(vars.clone(), q),
            };
        }
        q
    }

    /// Truth value for every assignment to the parameters, in mask order.
    pub fn truth_per_params(&self) -> Vec<bool> {
        let params = self.params();
        let q = self.to_qbf();
        (0..1u64 << params.len())
            .map(|mask| {
                let mut m = Interp::new(self.alphabet.len());
                for (i, &p) in params.iter().enumerate() {
                    m.set(p, mask >> i & 1 == 1);
                }
                crate::qbf::eval_qbf(&q, &m).expect("all free variables assigned")
            })
            .collect()
    }
}

fn find_word(s: &str, w: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut start = 0;
    while let Some(i) = s[start..].find(w) {
        let i = start + i;
        let before = i == 0 || !is_word(bytes[i - 1]);
        let after = i + w.len() >= bytes.len() || !is_word(bytes[i + w.len()]);
        if before && after {
            return Some(i);
        }
        start = i + w.len();
    }
    None
}

fn is_word(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'\'' || b == b'@' || b == b'.'
}
