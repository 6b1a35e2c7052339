//! Corpus specs for `batch`.
//!
//! A corpus is either a directory of interchange documents (read in file
//! name order) or `;`-separated family specs. Integer parameters may be
//! ranges `a..b` (inclusive), which expand to the cartesian product. Random
//! families without `seed=` are drawn `count` times with seeds
//! `seed, seed+1, ...`.

use std::fs;
use std::path::Path;

use hyperchrom::families::{self, FamilySpec};
use hyperchrom::{io, OrientedHypergraph};

use crate::CliError;

pub struct Instance {
    pub name: String,
    pub hypergraph: OrientedHypergraph,
    /// Closed-form vertex spectrum, ascending, when the family has one.
    pub oracle: Option<Vec<f64>>,
}

pub fn load(corpus: &str, count: usize, seed: u64) -> Result<Vec<Instance>, CliError> {
    let path = Path::new(corpus);
    if path.is_dir() {
        return load_dir(path);
    }
    let mut out = Vec::new();
    for item in corpus.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        for spec in expand(item, count, seed)? {
            out.push(generate(&spec)?);
        }
    }
    Ok(out)
}

fn load_dir(dir: &Path) -> Result<Vec<Instance>, CliError> {
    let mut paths: Vec<_> = fs::read_dir(dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p)?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(Instance { name, hypergraph: io::parse(&text)?, oracle: None })
        })
        .collect()
}

/// One item into concrete spec strings.
fn expand(item: &str, count: usize, seed: u64) -> Result<Vec<String>, CliError> {
    let (name, rest) = item.split_once(':').unwrap_or((item, ""));
    let mut variants: Vec<Vec<String>> = vec![Vec::new()];
    for pair in rest.split(',').filter(|s| !s.is_empty()) {
        let values = match pair.split_once('=') {
            Some((k, v)) => match v.split_once("..") {
                Some((lo, hi)) => {
                    let bad = || CliError::spec(format!("bad range {pair:?} in {item:?}"));
                    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
                    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
                    if lo > hi {
                        return Err(bad());
                    }
                    (lo..=hi).map(|x| format!("{}={x}", k.trim())).collect()
                }
                None => vec![pair.to_string()],
            },
            None => vec![pair.to_string()],
        };
        variants = variants
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    let random = name.trim().starts_with("random");
    let mut out = Vec::new();
    for params in variants {
        let base = if params.is_empty() { name.to_string() } else { format!("{name}:{}", params.join(",")) };
        if random && !params.iter().any(|p| p.trim_start().starts_with("seed=")) {
            let sep = if params.is_empty() { ":" } else { "," };
            out.extend((0..count as u64).map(|i| format!("{base}{sep}seed={}", seed + i)));
        } else {
            out.push(base);
        }
    }
    Ok(out)
}

fn generate(spec: &str) -> Result<Instance, CliError> {
    let family: FamilySpec = spec.parse()?;
    let hypergraph = family.generate()?;
    let oracle = match family {
        FamilySpec::Hyperflower { c, p, k } => Some(families::hyperflower_spectrum(c, p, k)),
        FamilySpec::UniformMultipartite { c, s, k } => Some(families::uniform_multipartite_spectrum(c, s, k)),
        _ => None,
    };
    Ok(Instance { name: family.to_string(), hypergraph, oracle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_expand_to_the_product() {
        let specs = expand("hyperflower:c=3..4,p=1..2,k=1", 1, 0).unwrap();
        assert_eq!(
            specs,
            [
                "hyperflower:c=3,p=1,k=1",
                "hyperflower:c=3,p=2,k=1",
                "hyperflower:c=4,p=1,k=1",
                "hyperflower:c=4,p=2,k=1"
            ]
        );
    }

    #[test]
    fn random_items_get_seeds() {
        let specs = expand("random:c=3,n=8,m=6", 3, 10).unwrap();
        assert_eq!(specs.len(), 3);
        assert!(specs[2].ends_with("seed=12"));
        assert_eq!(expand("random:c=3,n=8,m=6,seed=4", 3, 10).unwrap().len(), 1);
        assert!(expand("random:c=3,n=8,m=6", 0, 0).unwrap().is_empty());
    }

    #[test]
    fn bad_range_is_a_spec_error() {
        assert_eq!(expand("hyperflower:c=5..3,p=1,k=1", 1, 0).err().map(|e| e.code), Some(2));
    }

    #[test]
    fn families_with_closed_forms_carry_oracles() {
        let corpus = load("hyperflower:c=3,p=2,k=1;examplea0", 1, 0).unwrap();
        assert_eq!(corpus.len(), 2);
        assert!(corpus[0].oracle.is_some());
        assert!(corpus[1].oracle.is_none());
        assert!(load("", 5, 0).unwrap().is_empty());
    }
}
