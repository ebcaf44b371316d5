//! Splits <Sz>(t) into damped oscillating modes and checks the reconstruction
//! against dense propagation.

use lindblad::analysis::observable_modes;
use lindblad::model::{trace_of_product, DensityMatrix};
use lindblad::tls::{build_tls, sz, TlsParams};
use lindblad::vectorize::{build_superoperator, propagate, PropagationMethod};

fn main() -> lindblad::Result<()> {
    let model = build_tls(TlsParams::new(0.4, 1.5, 1.0)?);
    let l = build_superoperator(&model);
    let rho0 = DensityMatrix::basis_state(2, 1);
    let modes = observable_modes(&l, &rho0, &sz())?;
    println!("rate      frequency  amplitude");
    for m in &modes.modes {
        println!("{:<8.4}  {:<+9.4}  {:+.4} {:+.4}i", m.decay_rate(), m.frequency(), m.amplitude.re, m.amplitude.im);
    }
    println!("amplitude sum {:+.6} (initial <Sz> = -0.5)", modes.amplitude_sum().re);

    let times = [0.0, 1.0, 3.0, 10.0];
    for (t, rho) in times.iter().zip(propagate(&l, &rho0, &times, PropagationMethod::Dense)?) {
        let direct = trace_of_product(&sz(), rho.matrix()).re;
        println!("t = {t:<4} modes {:+.8}  direct {direct:+.8}", modes.evaluate(*t).re);
    }
    Ok(())
}
