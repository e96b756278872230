//! Text formats: edge lists, filtrations, and atomic file output.
//!
//! Edge list:
//!
//! ```text
//! # alphagraph v1 n=<n> alpha=<a> c=<c> seed=<s>
//! u v
//! ...
//! ```
//!
//! with `u < v`, sorted. A filtration adds an activation column. Kernels
//! other than the plain power law add a `# kernel=<spec>` line.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::model::KernelSpec;
use crate::sampler::{Filtration, Graph};
use crate::{Error, Result};

/// Positional decimal with 17 significant digits; round-trips every `f64`.
pub fn fmt_sig17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    // log10 can land one off near powers of ten
    if s.parse::<f64>().ok() != Some(x) {
        s = format!("{:.*}", decimals + 1, x);
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeListHeader {
    pub n: usize,
    pub alpha: f64,
    pub c: f64,
    pub seed: u64,
    /// Set for kernels that `alpha` alone does not describe.
    pub kernel: Option<String>,
}

impl EdgeListHeader {
    pub fn for_kernel(n: usize, kernel: &KernelSpec, c: f64, seed: u64) -> Self {
        let kernel_line = match kernel {
            KernelSpec::PowerLaw { .. } | KernelSpec::NearestNeighbor => None,
            other => Some(other.to_string()),
        };
        EdgeListHeader {
            n,
            alpha: kernel.alpha(),
            c,
            seed,
            kernel: kernel_line,
        }
    }

    fn write<W: Write + ?Sized>(&self, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "# alphagraph v1 n={} alpha={} c={} seed={}",
            self.n, self.alpha, self.c, self.seed
        )?;
        if let Some(k) = &self.kernel {
            writeln!(w, "# kernel={k}")?;
        }
        Ok(())
    }

    fn parse(line: &str) -> Result<EdgeListHeader> {
        let rest = line
            .strip_prefix("# alphagraph v1")
            .ok_or_else(|| Error::Parse(format!("not an alphagraph v1 header: `{line}`")))?;
        let mut n = None;
        let mut alpha = None;
        let mut c = None;
        let mut seed = None;
        for tok in rest.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token `{tok}`")))?;
            let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("header `{tok}`: {e}"));
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|e| bad(&e))?),
                "alpha" => alpha = Some(v.parse::<f64>().map_err(|e| bad(&e))?),
                "c" => c = Some(v.parse::<f64>().map_err(|e| bad(&e))?),
                "seed" => seed = Some(v.parse::<u64>().map_err(|e| bad(&e))?),
                _ => return Err(Error::Parse(format!("unknown header key `{k}`"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("header lacks `{k}`"));
        Ok(EdgeListHeader {
            n: n.ok_or_else(|| missing("n"))?,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
            c: c.ok_or_else(|| missing("c"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
            kernel: None,
        })
    }
}

pub fn write_edge_list<W: Write + ?Sized>(
    w: &mut W,
    header: &EdgeListHeader,
    graph: &Graph,
) -> Result<()> {
    header.write(w)?;
    for &(u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_filtration<W: Write + ?Sized>(
    w: &mut W,
    header: &EdgeListHeader,
    f: &Filtration,
) -> Result<()> {
    header.write(w)?;
    for &(u, v, a) in f.edges() {
        writeln!(w, "{u} {v} {}", fmt_sig17(a))?;
    }
    Ok(())
}

/// Contents of an edge-list or filtration file.
#[derive(Clone, Debug)]
pub enum EdgeFile {
    Graph(EdgeListHeader, Graph),
    Filtration(EdgeListHeader, Filtration),
}

impl EdgeFile {
    pub fn header(&self) -> &EdgeListHeader {
        match self {
            EdgeFile::Graph(h, _) | EdgeFile::Filtration(h, _) => h,
        }
    }
}

/// Read either format; the column count of the first data line decides.
pub fn read_edge_file(r: impl BufRead) -> Result<EdgeFile> {
    let mut lines = r.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge file".into()))??;
    let mut header = EdgeListHeader::parse(first.trim_end())?;
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    let mut columns = None;
    for (i, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(k) = comment.trim().strip_prefix("kernel=") {
                header.kernel = Some(k.to_string());
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let lineno = i + 2;
        match *columns.get_or_insert(fields.len()) {
            k if k != fields.len() => {
                return Err(Error::Parse(format!("line {lineno}: expected {k} columns")))
            }
            2 | 3 => {}
            k => return Err(Error::Parse(format!("line {lineno}: {k} columns"))),
        }
        let vertex = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("line {lineno}: `{s}`: {e}")))
        };
        let (u, v) = (vertex(fields[0])?, vertex(fields[1])?);
        if fields.len() == 2 {
            pairs.push((u, v));
        } else {
            let a = fields[2]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {lineno}: `{}`: {e}", fields[2])))?;
            triples.push((u, v, a));
        }
    }
    if columns == Some(3) {
        let f = Filtration::from_parts(header.n, header.c, triples)?;
        Ok(EdgeFile::Filtration(header, f))
    } else {
        let g = Graph::new(header.n, pairs)?;
        Ok(EdgeFile::Graph(header, g))
    }
}

pub fn read_edge_file_path(path: &Path) -> Result<EdgeFile> {
    let file = std::fs::File::open(path)?;
    read_edge_file(std::io::BufReader::new(file))
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
