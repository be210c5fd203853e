// Efficiency and work along the temperature ratio, written as CSV.

use stroke_engine::sweep::{compute_sweep, linspace, write_sweep_csv, write_tradeoff_csv, Axis, Columns, SweepConfig};

pub fn run() -> stroke_engine::Result<()> {
    let cfg = SweepConfig {
        beta_h_omega: 0.2,
        beta_c_omega: 0.6,
        axis: Axis::Ratio,
        grid: linspace(1.5, 6.0, 4),
        models: vec!["unrestricted".parse()?, "fb:10".parse()?, "jc".parse()?],
        columns: Columns::Both,
        raw: false,
    };
    let rows = compute_sweep(&cfg)?;
    let mut out = std::io::stdout().lock();
    write_sweep_csv(&mut out, &cfg, &rows, "example sweep").expect("stdout");
    write_tradeoff_csv(&mut out, &cfg, &rows, "example tradeoff").expect("stdout");
    Ok(())
}

#[allow(dead_code)]
fn main() -> stroke_engine::Result<()> {
    run()
}
