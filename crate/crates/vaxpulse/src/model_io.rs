//! Plain-text topic model files.
//!
//! ```text
//! vaxpulse-lda 1
//! K <topics>
//! V <terms>
//! D <documents>
//! alpha <f64>
//! beta <f64>
//! seed <u64>
//! vocab
//! <term>\t<doc frequency>        V lines
//! phi
//! <V floats, space separated>    K lines
//! theta
//! <K floats, space separated>    D lines
//! token_share
//! <K floats, space separated>
//! ```
//!
//! Floats are written in shortest round-trip form, so a save/load cycle
//! is bit-exact. Token assignments are not stored.

use std::io::{BufRead, Write};

use vaxpulse_core::{TopicModel, Vocabulary};

use crate::error::{PipelineError, Result};

const MAGIC: &str = "vaxpulse-lda 1";

fn row<W: Write>(w: &mut W, values: &[f64]) -> std::io::Result<()> {
    let mut first = true;
    for v in values {
        if !first {
            w.write_all(b" ")?;
        }
        first = false;
        write!(w, "{v}")?;
    }
    w.write_all(b"\n")
}

pub fn write_model<W: Write>(mut w: W, model: &TopicModel) -> Result<()> {
    (|| -> std::io::Result<()> {
        writeln!(w, "{MAGIC}")?;
        writeln!(w, "K {}", model.k)?;
        writeln!(w, "V {}", model.vocab.len())?;
        writeln!(w, "D {}", model.theta.len())?;
        writeln!(w, "alpha {}", model.alpha)?;
        writeln!(w, "beta {}", model.beta)?;
        writeln!(w, "seed {}", model.seed)?;
        writeln!(w, "vocab")?;
        for (term, df) in model.vocab.terms().iter().zip(model.vocab.doc_frequencies()) {
            writeln!(w, "{term}\t{df}")?;
        }
        writeln!(w, "phi")?;
        for r in &model.phi {
            row(&mut w, r)?;
        }
        writeln!(w, "theta")?;
        for r in &model.theta {
            row(&mut w, r)?;
        }
        writeln!(w, "token_share")?;
        row(&mut w, &model.token_share)?;
        w.flush()
    })()
    .map_err(PipelineError::data)
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    n: usize,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<String> {
        self.n += 1;
        match self.inner.next() {
            Some(Ok(l)) => Ok(l),
            Some(Err(e)) => Err(self.err(e)),
            None => Err(self.err("unexpected end of file")),
        }
    }

    fn err(&self, msg: impl std::fmt::Display) -> PipelineError {
        PipelineError::data(format!("model file line {}: {msg}", self.n))
    }

    fn literal(&mut self, want: &str) -> Result<()> {
        let got = self.next()?;
        if got != want {
            return Err(self.err(format!("expected {want:?}, found {got:?}")));
        }
        Ok(())
    }

    fn field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let line = self.next()?;
        line.strip_prefix(key)
            .and_then(|v| v.strip_prefix(' '))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| self.err(format!("expected `{key} <value>`")))
    }

    fn floats(&mut self, n: usize) -> Result<Vec<f64>> {
        let line = self.next()?;
        let values: Vec<f64> = line
            .split(' ')
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| self.err(e))?;
        if values.len() != n {
            return Err(self.err(format!("expected {n} values, found {}", values.len())));
        }
        Ok(values)
    }
}

pub fn read_model<R: BufRead>(r: R) -> Result<TopicModel> {
    let mut lines = Lines { inner: r.lines(), n: 0 };
    lines.literal(MAGIC)?;
    let k: usize = lines.field("K")?;
    let v: usize = lines.field("V")?;
    let d: usize = lines.field("D")?;
    let alpha: f64 = lines.field("alpha")?;
    let beta: f64 = lines.field("beta")?;
    let seed: u64 = lines.field("seed")?;
    lines.literal("vocab")?;
    let mut terms = Vec::with_capacity(v);
    let mut dfs = Vec::with_capacity(v);
    for _ in 0..v {
        let line = lines.next()?;
        let (term, df) = line
            .rsplit_once('\t')
            .and_then(|(t, df)| Some((t.to_string(), df.parse::<usize>().ok()?)))
            .ok_or_else(|| lines.err("expected `<term>\\t<df>`"))?;
        terms.push(term);
        dfs.push(df);
    }
    let vocab = Vocabulary::from_terms(terms, dfs).map_err(|e| lines.err(e))?;
    lines.literal("phi")?;
    let phi = (0..k).map(|_| lines.floats(v)).collect::<Result<Vec<_>>>()?;
    lines.literal("theta")?;
    let theta = (0..d).map(|_| lines.floats(k)).collect::<Result<Vec<_>>>()?;
    lines.literal("token_share")?;
    let token_share = lines.floats(k)?;
    Ok(TopicModel {
        k,
        vocab,
        phi,
        theta,
        alpha,
        beta,
        seed,
        assignments: Vec::new(),
        token_share,
    })
}
