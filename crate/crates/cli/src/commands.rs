//! Implementations of the five subcommands.

use bellsim::correlator::{
    chsh_curve_from_transfers, delta_f_curve, single_photon_transfer, CHSHCurve, Particle,
    TransferMatrices,
};
use bellsim::oracle::{chsh_sum, mc_transfer, simulate_bell_run, SplitMix64};
use bellsim::quadrature::QuadratureSpec;

use crate::output::{fmt12, CsvWriter, Manifest};
use crate::plot::{write_line_chart, Series};
use crate::pool::run_indexed;
use crate::{ChshArgs, CliError, Fig1Args, Fig2Args, Fig3Args, OracleArgs};

pub const CHSH_HEADER: &str = "theta_rad,F,E_00,E_0m,E_p0,E_pm,est_error";

fn build_curve(
    grid: &[f64],
    alpha: f64,
    width: f64,
    spec: &QuadratureSpec,
) -> Result<CHSHCurve, bellsim::Error> {
    let transfer_a = single_photon_transfer(Particle::A, alpha, width, spec)?;
    let transfer_b = single_photon_transfer(Particle::B, 0.0, width, spec)?;
    chsh_curve_from_transfers(grid, &transfer_a, &transfer_b)
}

fn curve_series(label: String, curve: &CHSHCurve) -> Series {
    Series {
        label,
        points: curve.points.iter().map(|p| (p.theta, p.f_value)).collect(),
    }
}

pub fn run_chsh(args: ChshArgs) -> Result<(), CliError> {
    if args.width.is_nan() || args.width < 0.0 {
        return Err(CliError::Usage("--width must be nonnegative".into()));
    }
    let grid = args.grid.build()?;
    let spec = args.quad.spec()?;
    let mut manifest = Manifest::begin();

    let curve = bellsim::correlator::chsh_curve(&grid, args.alpha, args.width, &spec)?;

    let mut writer = CsvWriter::create(&args.out, CHSH_HEADER)?;
    let est = fmt12(curve.max_est_error());
    for point in &curve.points {
        writer.row(&[
            fmt12(point.theta),
            fmt12(point.f_value),
            fmt12(point.correlations[0]),
            fmt12(point.correlations[1]),
            fmt12(point.correlations[2]),
            fmt12(point.correlations[3]),
            est.clone(),
        ])?;
    }
    writer.finish()?;

    let best = curve
        .points
        .iter()
        .max_by(|a, b| a.f_value.total_cmp(&b.f_value))
        .expect("grid is nonempty");
    let (angle, unit) = if args.degrees {
        (best.theta.to_degrees(), "deg")
    } else {
        (best.theta, "rad")
    };
    println!(
        "F_max = {:.6} at theta = {:.6} {unit}  (alpha = {}, W = {}, est_error <= {:.2e})",
        best.f_value,
        angle,
        args.alpha,
        args.width,
        curve.max_est_error()
    );

    manifest.push("alpha", args.alpha);
    manifest.push("width", args.width);
    manifest.push("theta_min", fmt12(args.grid.theta_min));
    manifest.push("theta_max", fmt12(args.grid.theta_max));
    manifest.push("theta_steps", args.grid.theta_steps);
    manifest.push_spec(&spec);
    manifest.push("max_est_error", fmt12(curve.max_est_error()));
    manifest.push(
        "nodes_used_a",
        format!("{}x{}", curve.nodes_a.0, curve.nodes_a.1),
    );
    manifest.push(
        "nodes_used_b",
        format!("{}x{}", curve.nodes_b.0, curve.nodes_b.1),
    );
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

/// Rapidity standing in for the saturated limit, and the larger value the
/// saturation is verified against.
pub const FIG1_ALPHA: f64 = 15.0;
pub const FIG1_ALPHA_CHECK: f64 = 20.0;
pub const FIG1_WIDTHS: [f64; 4] = [0.0, 0.3, 0.6, 1.0];

pub fn run_fig1(args: Fig1Args) -> Result<(), CliError> {
    let grid = args.grid.build()?;
    let spec = args.quad.spec()?;
    let mut manifest = Manifest::begin();

    let results = run_indexed(args.jobs, FIG1_WIDTHS.len(), |i| {
        let width = FIG1_WIDTHS[i];
        let primary = build_curve(&grid, FIG1_ALPHA, width, &spec)?;
        let saturation = build_curve(&grid, FIG1_ALPHA_CHECK, width, &spec)?;
        Ok::<_, bellsim::Error>((width, primary, saturation))
    });

    let mut writer = CsvWriter::create(&args.out, "W,theta_rad,F,F_saturation,est_error")?;
    let mut series = Vec::new();
    let mut worst_est = 0.0_f64;
    let mut worst_saturation = 0.0_f64;
    for result in results {
        let (width, primary, saturation) = result?;
        let est = primary.max_est_error().max(saturation.max_est_error());
        worst_est = worst_est.max(est);
        for (p, s) in primary.points.iter().zip(saturation.points.iter()) {
            worst_saturation = worst_saturation.max((p.f_value - s.f_value).abs());
            writer.row(&[
                fmt12(width),
                fmt12(p.theta),
                fmt12(p.f_value),
                fmt12(s.f_value),
                fmt12(est),
            ])?;
        }
        series.push(curve_series(format!("W = {width}"), &primary));
    }
    writer.finish()?;
    println!(
        "fig1: {} widths at alpha = {FIG1_ALPHA}, saturation residual <= {:.2e}",
        FIG1_WIDTHS.len(),
        worst_saturation
    );

    if let Some(plot) = &args.plot {
        write_line_chart(
            plot,
            "F(theta) at saturated boost for several packet widths",
            "theta (rad)",
            "F",
            &series,
        )?;
        manifest.push("plot", plot.display());
    }
    manifest.push("alpha_primary", FIG1_ALPHA);
    manifest.push("alpha_saturation_check", FIG1_ALPHA_CHECK);
    manifest.push("widths", format!("{FIG1_WIDTHS:?}"));
    manifest.push("theta_steps", args.grid.theta_steps);
    manifest.push_spec(&spec);
    manifest.push("max_est_error", fmt12(worst_est));
    manifest.push("max_saturation_residual", fmt12(worst_saturation));
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

pub const FIG2_WIDTH: f64 = 0.6;
pub const FIG2_ALPHAS: [f64; 6] = [2.0, 1.0, 0.0, -1.0, -2.0, -4.0];

pub fn run_fig2(args: Fig2Args) -> Result<(), CliError> {
    let grid = args.grid.build()?;
    let spec = args.quad.spec()?;
    let mut manifest = Manifest::begin();

    // The rest-frame photon B reduction is shared by every rapidity.
    let transfer_b = single_photon_transfer(Particle::B, 0.0, FIG2_WIDTH, &spec)?;
    let results = run_indexed(args.jobs, FIG2_ALPHAS.len(), |i| {
        let alpha = FIG2_ALPHAS[i];
        let transfer_a = single_photon_transfer(Particle::A, alpha, FIG2_WIDTH, &spec)?;
        let curve = chsh_curve_from_transfers(&grid, &transfer_a, &transfer_b)?;
        Ok::<_, bellsim::Error>((alpha, curve))
    });

    let mut writer = CsvWriter::create(&args.out, "alpha,theta_rad,F,est_error")?;
    let mut series = Vec::new();
    let mut worst_est = 0.0_f64;
    for result in results {
        let (alpha, curve) = result?;
        let est = fmt12(curve.max_est_error());
        worst_est = worst_est.max(curve.max_est_error());
        for point in &curve.points {
            writer.row(&[
                fmt12(alpha),
                fmt12(point.theta),
                fmt12(point.f_value),
                est.clone(),
            ])?;
        }
        series.push(curve_series(format!("alpha = {alpha}"), &curve));
    }
    writer.finish()?;
    println!(
        "fig2: {} rapidities at W = {FIG2_WIDTH}, est_error <= {worst_est:.2e}",
        FIG2_ALPHAS.len()
    );

    if let Some(plot) = &args.plot {
        write_line_chart(
            plot,
            "F(theta) at W = 0.6 for several detector rapidities",
            "theta (rad)",
            "F",
            &series,
        )?;
        manifest.push("plot", plot.display());
    }
    manifest.push("width", FIG2_WIDTH);
    manifest.push("alphas", format!("{FIG2_ALPHAS:?}"));
    manifest.push("theta_steps", args.grid.theta_steps);
    manifest.push_spec(&spec);
    manifest.push("max_est_error", fmt12(worst_est));
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

pub fn run_fig3(args: Fig3Args) -> Result<(), CliError> {
    if args.width.is_nan() || args.width < 0.0 {
        return Err(CliError::Usage("--width must be nonnegative".into()));
    }
    let grid = args.grid.build()?;
    let spec = args.quad.spec()?;
    let mut manifest = Manifest::begin();

    let delta = delta_f_curve(&grid, args.alpha, args.width, &spec)?;

    let mut writer = CsvWriter::create(
        &args.out,
        "theta_rad,F_moving,F_rest,delta_F,est_error_moving,est_error_rest",
    )?;
    let est_moving = fmt12(delta.moving.max_est_error());
    let est_rest = fmt12(delta.rest.max_est_error());
    let mut max_delta = 0.0_f64;
    for i in 0..delta.thetas.len() {
        max_delta = max_delta.max(delta.delta_f[i].abs());
        writer.row(&[
            fmt12(delta.thetas[i]),
            fmt12(delta.moving.points[i].f_value),
            fmt12(delta.rest.points[i].f_value),
            fmt12(delta.delta_f[i]),
            est_moving.clone(),
            est_rest.clone(),
        ])?;
    }
    writer.finish()?;
    println!(
        "fig3: max |delta F| = {max_delta:.3e} at alpha = {}, W = {} (est_error <= {:.2e})",
        args.alpha,
        args.width,
        delta.moving.max_est_error().max(delta.rest.max_est_error())
    );

    if let Some(plot) = &args.plot {
        write_line_chart(
            plot,
            "delta F(theta) between moving and rest detectors",
            "theta (rad)",
            "delta F",
            &[Series {
                label: format!("alpha = {}, W = {}", args.alpha, args.width),
                points: delta
                    .thetas
                    .iter()
                    .zip(delta.delta_f.iter())
                    .map(|(&t, &d)| (t, d))
                    .collect(),
            }],
        )?;
        manifest.push("plot", plot.display());
    }
    manifest.push("alpha", args.alpha);
    manifest.push("width", args.width);
    manifest.push("theta_steps", args.grid.theta_steps);
    manifest.push_spec(&spec);
    manifest.push("max_abs_delta_f", fmt12(max_delta));
    manifest.push("est_error_moving", est_moving);
    manifest.push("est_error_rest", est_rest);
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

pub fn run_oracle(args: OracleArgs) -> Result<(), CliError> {
    match args.pairs {
        Some(pairs) => run_oracle_bell(args, pairs),
        None => run_oracle_transfer(args),
    }
}

fn run_oracle_bell(args: OracleArgs, pairs: u64) -> Result<(), CliError> {
    if pairs == 0 {
        return Err(CliError::Usage("--pairs must be positive".into()));
    }
    let mut manifest = Manifest::begin();
    let runs = simulate_bell_run(args.theta, pairs, args.seed);
    let sum = chsh_sum(&runs);

    let mut writer = CsvWriter::create(
        &args.out,
        "pair_index,angle_a_rad,angle_b_rad,n_pairs,count_pp,count_pm,count_mp,count_mm,e_hat,pair_seed",
    )?;
    for (i, run) in runs.iter().enumerate() {
        writer.row(&[
            i.to_string(),
            fmt12(run.angle_pair.0),
            fmt12(run.angle_pair.1),
            run.n_pairs.to_string(),
            run.counts[0].to_string(),
            run.counts[1].to_string(),
            run.counts[2].to_string(),
            run.counts[3].to_string(),
            fmt12(run.e_hat),
            run.seed.to_string(),
        ])?;
    }
    writer.finish()?;
    println!(
        "oracle: finite-N CHSH sum = {sum:.6} at theta = {:.6} with N = {pairs} per setting",
        args.theta
    );

    manifest.push("mode", "bell-run");
    manifest.push("theta", fmt12(args.theta));
    manifest.push("pairs", pairs);
    manifest.push("seed", args.seed);
    manifest.push("chsh_sum", fmt12(sum));
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

fn run_oracle_transfer(args: OracleArgs) -> Result<(), CliError> {
    if args.width.is_nan() || args.width <= 0.0 {
        return Err(CliError::Usage(
            "--width must be positive to sample the packet".into(),
        ));
    }
    if args.samples < 10_000 {
        return Err(CliError::Usage("--samples must be at least 10000".into()));
    }
    let spec = args.quad.spec()?;
    let mut manifest = Manifest::begin();

    // Independent streams per particle, derived from the root seed.
    let mut seeder = SplitMix64::new(args.seed);
    let seed_a = seeder.next_u64();
    let seed_b = seeder.next_u64();

    let mut writer = CsvWriter::create(
        &args.out,
        "particle,matrix,bra,ket,quad_re,quad_im,mc_re,mc_im,std_error,abs_delta,pull_sigma",
    )?;
    let mut worst_pull = 0.0_f64;
    let mut worst_delta = 0.0_f64;
    for (particle, alpha, seed) in [
        (Particle::A, args.alpha, seed_a),
        (Particle::B, 0.0, seed_b),
    ] {
        let quad = single_photon_transfer(particle, alpha, args.width, &spec)?;
        let mc = mc_transfer(particle, alpha, args.width, args.samples, seed);
        write_comparison(
            &mut writer,
            particle,
            &quad,
            &mc,
            &mut worst_pull,
            &mut worst_delta,
        )?;
    }
    writer.finish()?;
    println!(
        "oracle: {} samples per particle, worst |delta| = {worst_delta:.3e}, worst pull = {worst_pull:.2} sigma",
        args.samples
    );

    manifest.push("mode", "transfer-check");
    manifest.push("alpha", args.alpha);
    manifest.push("width", args.width);
    manifest.push("samples", args.samples);
    manifest.push("seed", args.seed);
    manifest.push_spec(&spec);
    manifest.push("worst_abs_delta", fmt12(worst_delta));
    manifest.push("worst_pull_sigma", fmt12(worst_pull));
    manifest.push("output", args.out.display());
    manifest.write(&args.out)?;
    Ok(())
}

fn write_comparison(
    writer: &mut CsvWriter,
    particle: Particle,
    quad: &TransferMatrices,
    mc: &bellsim::oracle::McTransferMatrices,
    worst_pull: &mut f64,
    worst_delta: &mut f64,
) -> Result<(), CliError> {
    const LABELS: [char; 2] = ['H', 'V'];
    let particle_tag = match particle {
        Particle::A => "A",
        Particle::B => "B",
    };
    for (block, (label, matrix)) in quad.blocks().into_iter().enumerate() {
        for (p, bra) in LABELS.iter().enumerate() {
            for (q, ket) in LABELS.iter().enumerate() {
                let exact = matrix.0[p][q];
                let est = &mc.blocks[block][p][q];
                let delta = (est.mean - exact).norm();
                let pull = if est.std_error > 0.0 {
                    delta / est.std_error
                } else if delta == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                *worst_pull = worst_pull.max(pull);
                *worst_delta = worst_delta.max(delta);
                writer.row(&[
                    particle_tag.to_string(),
                    label.to_string(),
                    bra.to_string(),
                    ket.to_string(),
                    fmt12(exact.re),
                    fmt12(exact.im),
                    fmt12(est.mean.re),
                    fmt12(est.mean.im),
                    fmt12(est.std_error),
                    fmt12(delta),
                    fmt12(pull),
                ])?;
            }
        }
    }
    Ok(())
}
