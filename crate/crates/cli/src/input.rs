use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use dompack::constructions::DiskConfiguration;
use dompack::io::parse_graph;
use dompack::{Graph, Mode, VertexSet, XYInstance};
use serde::de::DeserializeOwned;

use crate::error::{CliError, CliResult};

/// Whole file, or stdin for `-`.
pub fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

pub fn load_disks(path: &Path) -> CliResult<DiskConfiguration> {
    DiskConfiguration::from_csv(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// graph6 or JSON edge list; `.csv` files are read as disk centres.
pub fn load_graph(path: &Path) -> CliResult<Graph> {
    if is_csv(path) {
        return Ok(load_disks(path)?.graph());
    }
    parse_graph(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// `all`, `none`, or a comma-separated id list.
pub fn parse_ids(spec: Option<&str>, n: usize) -> CliResult<VertexSet> {
    let spec = spec.map(str::trim).unwrap_or("");
    match spec {
        "" | "none" => Ok(VertexSet::new(n)),
        "all" => Ok(VertexSet::full(n)),
        _ => {
            let mut set = VertexSet::new(n);
            for part in spec.split(',') {
                let v: usize = part.trim().parse().map_err(|_| CliError::Parse(format!("bad vertex id {part:?}")))?;
                if v >= n {
                    return Err(CliError::Parse(format!("vertex {v} out of range for n = {n}")));
                }
                set.insert(v);
            }
            Ok(set)
        }
    }
}

pub fn instance(g: Graph, x: Option<&str>, y: Option<&str>, mode: Mode) -> CliResult<XYInstance> {
    let n = g.n();
    let x = parse_ids(x, n)?;
    let y = parse_ids(y, n)?;
    XYInstance::new(g, x, y, mode).map_err(|e| CliError::Parse(e.to_string()))
}

/// `key=value` pairs.
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn parse(items: &[String]) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        for item in items.iter().filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("parameter {item:?} is not key=value")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    pub fn get<T: std::str::FromStr>(&mut self, key: &str, default: T) -> CliResult<T> {
        match self.0.remove(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Parse(format!("bad value {v:?} for {key}"))),
        }
    }

    /// Fails on keys nobody asked for.
    pub fn finish(self) -> CliResult<()> {
        match self.0.keys().next() {
            Some(k) => Err(CliError::Parse(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }
}
