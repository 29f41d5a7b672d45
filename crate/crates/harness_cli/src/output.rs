use std::path::PathBuf;

use ddm::IterationLog;
use discrete_fourier::RateCurve;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::experiments::{BenchmarkTable, ContinuousPoint, Derived};
use crate::plot::{emit_plot, Chart, Series};

/// Resolved config plus derived time steps, one `# ` line each.
pub fn config_echo(cfg: &ExperimentConfig, derived: &[Derived]) -> String {
    let mut s = String::new();
    for line in cfg.to_toml().lines().filter(|l| !l.trim().is_empty()) {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s.push_str("# [derived]\n");
    for d in derived {
        s.push_str(&format!("# mn = {}, dt = {:e}, beta = {:e}\n", d.mn, d.dt, d.beta));
    }
    s
}

pub struct Writer {
    pub dir: PathBuf,
    echo: String,
    pub written: Vec<PathBuf>,
}

impl Writer {
    pub fn new(cfg: &ExperimentConfig, derived: &[Derived]) -> Result<Self, HarnessError> {
        let dir = cfg.output.dir.clone();
        std::fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
        Ok(Self { dir, echo: config_echo(cfg, derived), written: Vec::new() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Writes `# ` prefixed config lines followed by the records.
    pub fn csv(&mut self, name: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<PathBuf, HarnessError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        let path = self.path(name);
        let body = w.into_inner().map_err(|e| HarnessError::io(&path, e.into_error()))?;
        let mut bytes = self.echo.clone().into_bytes();
        bytes.extend(body);
        std::fs::write(&path, bytes).map_err(|e| HarnessError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn plot(&mut self, name: &str, mut chart: Chart) -> Result<PathBuf, HarnessError> {
        chart.description = self.echo.clone();
        let path = self.path(name);
        emit_plot(&chart, &path)?;
        self.written.push(path.clone());
        self.written.push(crate::plot::points_path(&path));
        Ok(path)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<PathBuf, HarnessError> {
        let path = self.path(name);
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(&path, text + "\n").map_err(|e| HarnessError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub const TABLE_HEADER: [&str; 9] =
    ["mn", "cells_per_unit", "classical_solves", "new_solves", "converged", "classical_status", "new_status", "reference_classical", "reference_new"];

pub fn table_rows(t: &BenchmarkTable) -> Vec<Vec<String>> {
    t.rows
        .iter()
        .map(|r| {
            vec![
                r.mn.to_string(),
                opt(r.cells_per_unit),
                opt(r.classical.as_ref().map(|s| s.solves)),
                opt(r.new.as_ref().map(|s| s.solves)),
                r.converged().to_string(),
                opt(r.classical.as_ref().map(|s| s.status.as_str())),
                opt(r.new.as_ref().map(|s| s.status.as_str())),
                opt(r.reference.map(|x| x.classical)),
                opt(r.reference.map(|x| x.new)),
            ]
        })
        .collect()
}

pub fn table_chart(t: &BenchmarkTable) -> Chart {
    let by_mn = |f: &dyn Fn(&crate::experiments::TableRow) -> Option<f64>| -> Vec<(f64, f64)> {
        t.rows.iter().filter(|r| r.cells_per_unit.is_none()).filter_map(|r| Some((r.mn, f(r)?))).collect()
    };
    let mut series = vec![
        Series { name: "classical".into(), points: by_mn(&|r| r.classical.as_ref().map(|s| s.solves as f64)) },
        Series { name: "new".into(), points: by_mn(&|r| r.new.as_ref().map(|s| s.solves as f64)) },
        Series { name: "reference classical".into(), points: by_mn(&|r| r.reference.map(|x| x.classical as f64)) },
        Series { name: "reference new".into(), points: by_mn(&|r| r.reference.map(|x| x.new as f64)) },
    ];
    let mut log_x = true;
    if t.rows.iter().any(|r| r.cells_per_unit.is_some()) {
        log_x = false;
        series.clear();
        let mut machs: Vec<f64> = t.rows.iter().map(|r| r.mn).collect();
        machs.dedup();
        for mn in machs {
            let rows = || t.rows.iter().filter(move |r| r.mn == mn);
            series.push(Series {
                name: format!("classical Mn {mn}"),
                points: rows().filter_map(|r| Some((r.cells_per_unit? as f64, r.classical.as_ref()?.solves as f64))).collect(),
            });
            series.push(Series {
                name: format!("new Mn {mn}"),
                points: rows().filter_map(|r| Some((r.cells_per_unit? as f64, r.new.as_ref()?.solves as f64))).collect(),
            });
        }
    }
    series.retain(|s| !s.points.is_empty());
    Chart {
        title: format!("subdomain solves, {}", t.name),
        x_label: if log_x { "Mn".into() } else { "cells per unit length".into() },
        y_label: "solves per subdomain".into(),
        log_x,
        series,
        ..Default::default()
    }
}

pub fn history_rows(log: &IterationLog) -> Vec<Vec<String>> {
    log.errors
        .iter()
        .enumerate()
        .map(|(k, e)| vec![k.to_string(), format!("{e:e}"), (if k == 0 { 0 } else { log.solves[k - 1] }).to_string()])
        .collect()
}

pub fn history_chart(logs: &[&IterationLog], title: &str) -> Chart {
    Chart {
        title: title.into(),
        x_label: "subdomain solves".into(),
        y_label: "max-norm error".into(),
        log_y: true,
        series: logs
            .iter()
            .map(|l| Series {
                name: l.method.clone(),
                points: l.errors.iter().enumerate().map(|(k, e)| ((if k == 0 { 0 } else { l.solves[k - 1] }) as f64, *e)).collect(),
            })
            .collect(),
        ..Default::default()
    }
}

pub fn curve_rows(curves: &[RateCurve]) -> Vec<Vec<String>> {
    curves
        .iter()
        .flat_map(|c| {
            c.points.iter().map(move |p| {
                let mut flags = Vec::new();
                if p.marginal {
                    flags.push("marginal");
                }
                if p.degenerate {
                    flags.push("degenerate");
                }
                if p.rho >= 1.0 {
                    flags.push("rho>=1");
                }
                vec![format!("{:e}", p.xi), format!("{:e}", p.rho), c.variant.name().to_string(), flags.join("|")]
            })
        })
        .collect()
}

pub fn curve_chart(curves: &[RateCurve], mn: f64) -> Chart {
    Chart {
        title: format!("discrete convergence rate, Mn = {mn}"),
        x_label: "xi".into(),
        y_label: "rho".into(),
        log_x: true,
        guide_y: Some(1.0),
        series: curves
            .iter()
            .map(|c| Series { name: c.variant.name().into(), points: c.points.iter().map(|p| (p.xi, p.rho)).collect() })
            .collect(),
        ..Default::default()
    }
}

pub fn continuous_rows(points: &[ContinuousPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| {
            vec![format!("{:e}", p.xi), format!("{:e}", p.alpha[0]), format!("{:e}", p.alpha[1]), format!("{:e}", p.alpha[2]), format!("{:e}", p.residual)]
        })
        .collect()
}
