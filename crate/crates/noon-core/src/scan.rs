//! Deterministic parameter sweeps with stable file output.
//!
//! A scan fixes the probe parameters, varies one or two of them over
//! inclusive uniform grids, and evaluates a list of quantities at every
//! point. The same spec always produces byte-identical CSV and JSON, which
//! is what makes the emitted files diffable across runs and machines.

use std::fs::File;
use std::io;
use std::path::Path;
use std::str::FromStr;
use std::time::SystemTime;

use serde::{Deserialize, Serialize};

use crate::analytic::{
    advantage_ratio, coincidence_distribution, fisher_information, fisher_information_max,
    visibility, ProbeConfig,
};
use crate::error::{Error, Result};
use crate::metrology::{classify_regime, RegimeLabel};

/// Parameter a scan axis can run over. `n` scans the photon number and must
/// land on integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisParam {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "loss")]
    Loss,
    #[serde(rename = "phase")]
    Phase,
    #[serde(rename = "n")]
    Photons,
}

impl AxisParam {
    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::Alpha => "alpha",
            AxisParam::Loss => "loss",
            AxisParam::Phase => "phase",
            AxisParam::Photons => "n",
        }
    }
}

impl FromStr for AxisParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(AxisParam::Alpha),
            "loss" => Ok(AxisParam::Loss),
            "phase" => Ok(AxisParam::Phase),
            "n" => Ok(AxisParam::Photons),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }
}

/// Inclusive uniform grid over one parameter. The step count is the input,
/// not the step size, so endpoints never drift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: AxisParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    /// Grid values. The last one is `max` itself, bit for bit.
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let divisions = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k == self.steps - 1 {
                    self.max
                } else {
                    self.min + span * k as f64 / divisions
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Visibility,
    FisherMax,
    FisherPhi,
    DetectionProbs,
    AdvantageRatio,
    Regime,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Visibility => "visibility",
            Quantity::FisherMax => "fisher_max",
            Quantity::FisherPhi => "fisher_phi",
            Quantity::DetectionProbs => "detection_probs",
            Quantity::AdvantageRatio => "advantage_ratio",
            Quantity::Regime => "regime",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "visibility" => Ok(Quantity::Visibility),
            "fisher_max" => Ok(Quantity::FisherMax),
            "fisher_phi" => Ok(Quantity::FisherPhi),
            "detection_probs" => Ok(Quantity::DetectionProbs),
            "advantage_ratio" => Ok(Quantity::AdvantageRatio),
            "regime" => Ok(Quantity::Regime),
            other => Err(Error::UnknownQuantity(other.to_string())),
        }
    }
}

/// What to sweep: fixed parameters, one or two axes, and the quantities to
/// evaluate at every grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub n_photons: u32,
    pub alpha: f64,
    pub loss: f64,
    pub phase: f64,
    pub axes: Vec<Axis>,
    pub quantities: Vec<Quantity>,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Scan(format!(
                "a scan needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(Error::Scan(format!(
                "both axes scan `{}`",
                self.axes[0].param.name()
            )));
        }
        for axis in &self.axes {
            let name = axis.param.name();
            if axis.steps < 2 {
                return Err(Error::Scan(format!("axis `{name}` needs at least 2 steps")));
            }
            if !axis.min.is_finite() || !axis.max.is_finite() || axis.min >= axis.max {
                return Err(Error::Scan(format!(
                    "axis `{name}` range [{}, {}] is not increasing",
                    axis.min, axis.max
                )));
            }
            match axis.param {
                AxisParam::Alpha | AxisParam::Loss => {
                    if axis.min < 0.0 || axis.max > 1.0 {
                        return Err(Error::Scan(format!(
                            "axis `{name}` must stay within [0, 1]"
                        )));
                    }
                }
                AxisParam::Phase => {}
                AxisParam::Photons => {
                    for v in axis.values() {
                        if (v - v.round()).abs() > 1e-9 || v.round() < 1.0 {
                            return Err(Error::Scan(format!(
                                "axis `n` must hit integers >= 1, got {v}"
                            )));
                        }
                    }
                }
            }
        }
        if self.n_photons < 1 {
            return Err(Error::Scan("fixed n must be >= 1".to_string()));
        }
        for (name, value) in [("alpha", self.alpha), ("loss", self.loss)] {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::Scan(format!(
                    "fixed `{name}` = {value} outside [0, 1]"
                )));
            }
        }
        if !self.phase.is_finite() {
            return Err(Error::Scan("fixed `phase` must be finite".to_string()));
        }
        if self.quantities.is_empty() {
            return Err(Error::Scan("at least one quantity is required".to_string()));
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(Error::Scan(format!("quantity `{}` repeats", q.name())));
            }
        }
        let scans_photons = self.axes.iter().any(|a| a.param == AxisParam::Photons);
        if scans_photons && self.quantities.contains(&Quantity::DetectionProbs) {
            return Err(Error::Scan(
                "detection_probs cannot scan `n`; the column count would change".to_string(),
            ));
        }
        if self.quantities.contains(&Quantity::Regime) {
            let min_n = self
                .axes
                .iter()
                .find(|a| a.param == AxisParam::Photons)
                .map(|a| a.min.round() as u32)
                .unwrap_or(self.n_photons);
            if min_n < 2 {
                return Err(Error::Scan("regime needs n >= 2".to_string()));
            }
        }
        Ok(())
    }

    /// Output column names: axis parameters first, then one column per
    /// quantity, with `detection_probs` expanded to `prob_0..prob_N`.
    pub fn columns(&self) -> Vec<String> {
        let mut columns: Vec<String> = self.axes.iter().map(|a| a.param.name().into()).collect();
        for q in &self.quantities {
            if *q == Quantity::DetectionProbs {
                for port in 0..=self.n_photons {
                    columns.push(format!("prob_{port}"));
                }
            } else {
                columns.push(q.name().into());
            }
        }
        columns
    }
}

/// One evaluated grid value. Untagged in JSON: numbers stay numbers, regime
/// labels stay strings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    Num(f64),
    Label(RegimeLabel),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisValues {
    pub param: AxisParam,
    pub values: Vec<f64>,
}

/// Coordinates in axis declaration order, then values in column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub coords: Vec<f64>,
    pub values: Vec<CellValue>,
}

/// Completed sweep. Serialized keys appear in declaration order: spec,
/// tool_version, columns, axes, cells. The timestamp is in-memory only so
/// that repeated runs serialize identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: ScanSpec,
    pub tool_version: String,
    pub columns: Vec<String>,
    pub axes: Vec<AxisValues>,
    pub cells: Vec<Cell>,
    #[serde(skip, default = "SystemTime::now")]
    pub timestamp: SystemTime,
}

/// Evaluate the grid sequentially in row-major order over the axes as
/// declared (the last axis varies fastest).
pub fn run_scan(spec: &ScanSpec) -> Result<ScanResult> {
    spec.validate()?;
    let axis_values: Vec<Vec<f64>> = spec.axes.iter().map(Axis::values).collect();
    let mut cells = Vec::with_capacity(axis_values.iter().map(Vec::len).product());
    if axis_values.len() == 1 {
        for &v in &axis_values[0] {
            cells.push(evaluate_cell(spec, &[v])?);
        }
    } else {
        for &u in &axis_values[0] {
            for &v in &axis_values[1] {
                cells.push(evaluate_cell(spec, &[u, v])?);
            }
        }
    }
    Ok(ScanResult {
        spec: spec.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        columns: spec.columns(),
        axes: spec
            .axes
            .iter()
            .map(|a| AxisValues {
                param: a.param,
                values: a.values(),
            })
            .collect(),
        cells,
        timestamp: SystemTime::now(),
    })
}

fn evaluate_cell(spec: &ScanSpec, coords: &[f64]) -> Result<Cell> {
    let mut n_photons = spec.n_photons;
    let mut alpha = spec.alpha;
    let mut loss = spec.loss;
    let mut phase = spec.phase;
    for (axis, &coord) in spec.axes.iter().zip(coords) {
        match axis.param {
            AxisParam::Alpha => alpha = coord,
            AxisParam::Loss => loss = coord,
            AxisParam::Phase => phase = coord,
            AxisParam::Photons => n_photons = coord.round() as u32,
        }
    }
    // Cells where the fringe is gone entirely still get values, so maps
    // have no holes: zero ratio, no advantage.
    let degenerate = alpha == 0.0 || alpha == 1.0 || loss == 1.0;
    let mut values = Vec::with_capacity(spec.quantities.len());
    for q in &spec.quantities {
        match q {
            Quantity::Visibility => {
                values.push(CellValue::Num(visibility(alpha, loss, n_photons)));
            }
            Quantity::FisherMax => {
                values.push(CellValue::Num(fisher_information_max(
                    n_photons, alpha, loss,
                )));
            }
            Quantity::FisherPhi => {
                let cfg = ProbeConfig::new(n_photons, alpha, loss, phase)?;
                values.push(CellValue::Num(fisher_information(&cfg)));
            }
            Quantity::DetectionProbs => {
                let cfg = ProbeConfig::new(n_photons, alpha, loss, phase)?;
                for p in coincidence_distribution(&cfg).probabilities {
                    values.push(CellValue::Num(p));
                }
            }
            Quantity::AdvantageRatio => {
                let ratio = if degenerate {
                    0.0
                } else {
                    advantage_ratio(alpha, loss, n_photons)?
                };
                values.push(CellValue::Num(ratio));
            }
            Quantity::Regime => {
                let label = if degenerate {
                    RegimeLabel::NoAdvantage
                } else {
                    classify_regime(alpha, loss, n_photons)?
                };
                values.push(CellValue::Label(label));
            }
        }
    }
    Ok(Cell {
        coords: coords.to_vec(),
        values,
    })
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_coord(param: AxisParam, v: f64) -> String {
    if param == AxisParam::Photons {
        format!("{}", v as i64)
    } else {
        format_float(v)
    }
}

pub fn write_csv_to(result: &ScanResult, out: &mut impl io::Write) -> io::Result<()> {
    writeln!(out, "{}", result.columns.join(","))?;
    let mut fields = Vec::with_capacity(result.columns.len());
    for cell in &result.cells {
        fields.clear();
        for (axis, &coord) in result.spec.axes.iter().zip(&cell.coords) {
            fields.push(format_coord(axis.param, coord));
        }
        for value in &cell.values {
            fields.push(match value {
                CellValue::Num(x) => format_float(*x),
                CellValue::Label(label) => label.to_string(),
            });
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// JSON formatter that writes every float with 17 significant digits in
/// scientific notation, enough to round-trip f64 exactly.
struct SciFloatFormatter;

impl serde_json::ser::Formatter for SciFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn write_json_to(result: &ScanResult, out: &mut impl io::Write) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, SciFloatFormatter);
    result
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
    writeln!(out)
}

fn create_file(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_csv(result: &ScanResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = create_file(path)?;
    write_csv_to(result, &mut file).map_err(|source| Error::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json(result: &ScanResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = create_file(path)?;
    write_json_to(result, &mut file).map_err(|source| Error::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> ScanSpec {
        ScanSpec {
            n_photons: 2,
            alpha: 0.5,
            loss: 0.0,
            phase: 0.0,
            axes: vec![Axis {
                param: AxisParam::Alpha,
                min: 0.0,
                max: 1.0,
                steps: 101,
            }],
            quantities: vec![Quantity::Visibility],
        }
    }

    #[test]
    fn axis_hits_endpoints_exactly() {
        let axis = Axis {
            param: AxisParam::Loss,
            min: 0.1,
            max: 0.7,
            steps: 7,
        };
        let values = axis.values();
        assert_eq!(values.len(), 7);
        assert_eq!(values[0].to_bits(), 0.1f64.to_bits());
        assert_eq!(values[6].to_bits(), 0.7f64.to_bits());
        for pair in values.windows(2) {
            assert!((pair[1] - pair[0] - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn validation_rejects_malformed_specs() {
        let mut no_axes = base_spec();
        no_axes.axes.clear();
        assert!(matches!(no_axes.validate(), Err(Error::Scan(_))));

        let mut too_few_steps = base_spec();
        too_few_steps.axes[0].steps = 1;
        assert!(matches!(too_few_steps.validate(), Err(Error::Scan(_))));

        let mut backwards = base_spec();
        backwards.axes[0].min = 0.9;
        backwards.axes[0].max = 0.1;
        assert!(matches!(backwards.validate(), Err(Error::Scan(_))));

        let mut out_of_domain = base_spec();
        out_of_domain.axes[0].max = 1.5;
        assert!(matches!(out_of_domain.validate(), Err(Error::Scan(_))));

        let mut no_quantities = base_spec();
        no_quantities.quantities.clear();
        assert!(matches!(no_quantities.validate(), Err(Error::Scan(_))));

        let mut duplicated = base_spec();
        duplicated.quantities = vec![Quantity::Visibility, Quantity::Visibility];
        assert!(matches!(duplicated.validate(), Err(Error::Scan(_))));

        let mut fractional_photons = base_spec();
        fractional_photons.axes[0] = Axis {
            param: AxisParam::Photons,
            min: 1.0,
            max: 2.0,
            steps: 3,
        };
        assert!(matches!(fractional_photons.validate(), Err(Error::Scan(_))));

        let mut single_photon_regime = base_spec();
        single_photon_regime.n_photons = 1;
        single_photon_regime.quantities = vec![Quantity::Regime];
        assert!(matches!(single_photon_regime.validate(), Err(Error::Scan(_))));

        let mut probs_over_photons = base_spec();
        probs_over_photons.axes[0] = Axis {
            param: AxisParam::Photons,
            min: 1.0,
            max: 4.0,
            steps: 4,
        };
        probs_over_photons.quantities = vec![Quantity::DetectionProbs];
        assert!(matches!(probs_over_photons.validate(), Err(Error::Scan(_))));

        let mut repeated_axes = base_spec();
        repeated_axes.axes = vec![repeated_axes.axes[0], repeated_axes.axes[0]];
        assert!(matches!(repeated_axes.validate(), Err(Error::Scan(_))));
    }

    #[test]
    fn one_axis_cell_count_matches_steps() {
        let result = run_scan(&base_spec()).unwrap();
        assert_eq!(result.cells.len(), 101);
        assert_eq!(result.axes.len(), 1);
        assert_eq!(result.axes[0].values.len(), 101);
    }

    #[test]
    fn two_axis_scan_is_row_major() {
        let mut spec = base_spec();
        spec.axes = vec![
            Axis {
                param: AxisParam::Alpha,
                min: 0.2,
                max: 0.8,
                steps: 2,
            },
            Axis {
                param: AxisParam::Loss,
                min: 0.0,
                max: 0.4,
                steps: 3,
            },
        ];
        let result = run_scan(&spec).unwrap();
        assert_eq!(result.cells.len(), 6);
        let coords: Vec<(f64, f64)> = result
            .cells
            .iter()
            .map(|c| (c.coords[0], c.coords[1]))
            .collect();
        assert_eq!(
            coords,
            vec![
                (0.2, 0.0),
                (0.2, 0.2),
                (0.2, 0.4),
                (0.8, 0.0),
                (0.8, 0.2),
                (0.8, 0.4)
            ]
        );
    }

    #[test]
    fn visibility_curve_peaks_at_the_compensating_alpha() {
        let mut spec = base_spec();
        spec.loss = 0.3;
        let result = run_scan(&spec).unwrap();
        let (best_idx, best) = result
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| match c.values[0] {
                CellValue::Num(v) => (i, v),
                CellValue::Label(_) => unreachable!(),
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(best > 0.999);
        assert!((result.cells[best_idx].coords[0] - 0.3288590604026846).abs() <= 0.01);
    }

    #[test]
    fn fisher_max_decreases_with_loss() {
        for n in [1u32, 2, 5] {
            let spec = ScanSpec {
                n_photons: n,
                alpha: 0.2,
                loss: 0.0,
                phase: 0.0,
                axes: vec![Axis {
                    param: AxisParam::Loss,
                    min: 0.0,
                    max: 1.0,
                    steps: 101,
                }],
                quantities: vec![Quantity::FisherMax],
            };
            let result = run_scan(&spec).unwrap();
            let series: Vec<f64> = result
                .cells
                .iter()
                .map(|c| match c.values[0] {
                    CellValue::Num(v) => v,
                    CellValue::Label(_) => unreachable!(),
                })
                .collect();
            for pair in series.windows(2) {
                assert!(pair[1] < pair[0] + 1e-15, "n = {n}: {pair:?}");
            }
        }
    }

    #[test]
    fn degenerate_cells_fill_without_holes() {
        let spec = ScanSpec {
            n_photons: 2,
            alpha: 0.5,
            loss: 0.0,
            phase: 0.0,
            axes: vec![
                Axis {
                    param: AxisParam::Alpha,
                    min: 0.0,
                    max: 1.0,
                    steps: 3,
                },
                Axis {
                    param: AxisParam::Loss,
                    min: 0.0,
                    max: 1.0,
                    steps: 3,
                },
            ],
            quantities: vec![Quantity::AdvantageRatio, Quantity::Regime],
        };
        let result = run_scan(&spec).unwrap();
        assert_eq!(result.cells.len(), 9);
        for cell in &result.cells {
            let edge =
                cell.coords[0] == 0.0 || cell.coords[0] == 1.0 || cell.coords[1] == 1.0;
            if edge {
                assert_eq!(cell.values[0], CellValue::Num(0.0), "{:?}", cell.coords);
                assert_eq!(
                    cell.values[1],
                    CellValue::Label(RegimeLabel::NoAdvantage),
                    "{:?}",
                    cell.coords
                );
            }
        }
        // The ideal center-left cell is still classified normally.
        let ideal = &result.cells[3];
        assert_eq!(ideal.coords, vec![0.5, 0.0]);
        assert_eq!(ideal.values[1], CellValue::Label(RegimeLabel::Superiority));
    }

    #[test]
    fn csv_has_header_plus_one_row_per_cell() {
        let mut spec = base_spec();
        spec.axes[0].steps = 2;
        spec.axes.push(Axis {
            param: AxisParam::Loss,
            min: 0.0,
            max: 1.0,
            steps: 2,
        });
        spec.quantities = vec![Quantity::Visibility, Quantity::Regime];
        let result = run_scan(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv_to(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "alpha,loss,visibility,regime");
        assert!(lines.iter().skip(1).all(|l| l.ends_with("NoAdvantage")));
    }

    #[test]
    fn output_is_deterministic_across_runs() {
        let mut spec = base_spec();
        spec.loss = 0.3;
        spec.quantities = vec![Quantity::Visibility, Quantity::FisherMax];
        let mut csv_a = Vec::new();
        let mut csv_b = Vec::new();
        let mut json_a = Vec::new();
        let mut json_b = Vec::new();
        write_csv_to(&run_scan(&spec).unwrap(), &mut csv_a).unwrap();
        write_csv_to(&run_scan(&spec).unwrap(), &mut csv_b).unwrap();
        write_json_to(&run_scan(&spec).unwrap(), &mut json_a).unwrap();
        write_json_to(&run_scan(&spec).unwrap(), &mut json_b).unwrap();
        assert_eq!(csv_a, csv_b);
        assert_eq!(json_a, json_b);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let spec = ScanSpec {
            n_photons: 3,
            alpha: 0.37,
            loss: 0.21,
            phase: 0.9,
            axes: vec![Axis {
                param: AxisParam::Phase,
                min: 0.0,
                max: 3.1,
                steps: 17,
            }],
            quantities: vec![
                Quantity::DetectionProbs,
                Quantity::FisherPhi,
                Quantity::AdvantageRatio,
            ],
        };
        let result = run_scan(&spec).unwrap();
        let mut buf = Vec::new();
        write_json_to(&result, &mut buf).unwrap();
        let parsed: ScanResult = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed.spec, result.spec);
        assert_eq!(parsed.columns, result.columns);
        assert_eq!(parsed.axes, result.axes);
        assert_eq!(parsed.cells, result.cells);
        assert_eq!(parsed.tool_version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn json_keys_stay_in_documented_order() {
        let result = run_scan(&base_spec()).unwrap();
        let mut buf = Vec::new();
        write_json_to(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let spec_at = text.find("\"spec\"").unwrap();
        let version_at = text.find("\"tool_version\"").unwrap();
        let columns_at = text.find("\"columns\"").unwrap();
        // The echoed ScanSpec contains an "axes" key of its own; the
        // top-level one is the last occurrence.
        let axes_at = text.rfind("\"axes\"").unwrap();
        let cells_at = text.rfind("\"cells\"").unwrap();
        assert!(spec_at < version_at);
        assert!(version_at < columns_at);
        assert!(columns_at < axes_at);
        assert!(axes_at < cells_at);
    }

    #[test]
    fn cells_match_fresh_single_point_evaluation() {
        let mut spec = base_spec();
        spec.loss = 0.25;
        spec.quantities = vec![Quantity::Visibility, Quantity::FisherMax];
        let result = run_scan(&spec).unwrap();
        for idx in [0, 13, 50, 77, 100] {
            let cell = &result.cells[idx];
            let alpha = cell.coords[0];
            assert_eq!(
                cell.values[0],
                CellValue::Num(visibility(alpha, 0.25, 2))
            );
            assert_eq!(
                cell.values[1],
                CellValue::Num(fisher_information_max(2, alpha, 0.25))
            );
        }
    }

    #[test]
    fn unwritable_destination_reports_the_path() {
        let result = run_scan(&base_spec()).unwrap();
        let err = write_csv(&result, "/definitely/not/a/dir/out.csv").unwrap_err();
        assert!(err.to_string().contains("/definitely/not/a/dir/out.csv"));
    }
}
