//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants, following Higham, "The Scaling and Squaring Method for the
//! Matrix Exponential Revisited" (SIAM J. Matrix Anal. 2005).

use nalgebra::DMatrix;
use num_complex::Complex;

type CMat = DMatrix<Complex<f64>>;

fn l1_norm(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn real(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

pub(crate) fn expm(a: &CMat) -> CMat {
    let (u, v, squarings) = pade_uv(a);
    // Padé approximant is (V - U)^{-1} (V + U).
    let numer = &v + &u;
    let denom = &v - &u;
    let mut result = denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator must be invertible after scaling");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

fn pade_uv(a: &CMat) -> (CMat, CMat, u32) {
    let norm = l1_norm(a);
    if norm < 1.495_585_217_958_292e-2 {
        let (u, v) = pade3(a);
        (u, v, 0)
    } else if norm < 2.539_398_330_063_23e-1 {
        let (u, v) = pade5(a);
        (u, v, 0)
    } else if norm < 9.504_178_996_162_932e-1 {
        let (u, v) = pade7(a);
        (u, v, 0)
    } else if norm < 2.097_847_961_257_068 {
        let (u, v) = pade9(a);
        (u, v, 0)
    } else {
        const MAX_NORM: f64 = 5.371_920_351_148_152;
        let squarings = ((norm / MAX_NORM).log2().ceil() as i32).max(0) as u32;
        let scaled = a.map(|z| z * 2f64.powi(-(squarings as i32)));
        let (u, v) = pade13(&scaled);
        (u, v, squarings)
    }
}

fn pade3(a: &CMat) -> (CMat, CMat) {
    const B: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
    let id = CMat::identity(a.nrows(), a.ncols());
    let a2 = a * a;
    let u = a * (&a2 * real(B[3]) + &id * real(B[1]));
    let v = a2 * real(B[2]) + id * real(B[0]);
    (u, v)
}

fn pade5(a: &CMat) -> (CMat, CMat) {
    const B: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
    let id = CMat::identity(a.nrows(), a.ncols());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let u = a * (&a4 * real(B[5]) + &a2 * real(B[3]) + &id * real(B[1]));
    let v = a4 * real(B[4]) + a2 * real(B[2]) + id * real(B[0]);
    (u, v)
}

fn pade7(a: &CMat) -> (CMat, CMat) {
    const B: [f64; 8] =
        [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1_512.0, 56.0, 1.0];
    let id = CMat::identity(a.nrows(), a.ncols());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u = a * (&a6 * real(B[7]) + &a4 * real(B[5]) + &a2 * real(B[3]) + &id * real(B[1]));
    let v = a6 * real(B[6]) + a4 * real(B[4]) + a2 * real(B[2]) + id * real(B[0]);
    (u, v)
}

fn pade9(a: &CMat) -> (CMat, CMat) {
    const B: [f64; 10] = [
        17_643_225_600.0,
        8_821_612_800.0,
        2_075_673_600.0,
        302_702_400.0,
        30_270_240.0,
        2_162_160.0,
        110_880.0,
        3_960.0,
        90.0,
        1.0,
    ];
    let id = CMat::identity(a.nrows(), a.ncols());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let a8 = &a6 * &a2;
    let u = a
        * (&a8 * real(B[9])
            + &a6 * real(B[7])
            + &a4 * real(B[5])
            + &a2 * real(B[3])
            + &id * real(B[1]));
    let v = a8 * real(B[8]) + a6 * real(B[6]) + a4 * real(B[4]) + a2 * real(B[2]) + id * real(B[0]);
    (u, v)
}

fn pade13(a: &CMat) -> (CMat, CMat) {
    const B: [f64; 14] = [
        64_764_752_532_480_000.0,
        32_382_376_266_240_000.0,
        7_771_770_303_897_600.0,
        1_187_353_796_428_800.0,
        129_060_195_264_000.0,
        10_559_470_521_600.0,
        670_442_572_800.0,
        33_522_128_640.0,
        1_323_241_920.0,
        40_840_800.0,
        960_960.0,
        16_380.0,
        182.0,
        1.0,
    ];
    let id = CMat::identity(a.nrows(), a.ncols());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let w = &a6 * real(B[13]) + &a4 * real(B[11]) + &a2 * real(B[9]);
    let u = a
        * (&a6 * w + &a6 * real(B[7]) + &a4 * real(B[5]) + &a2 * real(B[3]) + &id * real(B[1]));

    let w2 = &a6 * real(B[12]) + &a4 * real(B[10]) + &a2 * real(B[8]);
    let v = &a6 * w2 + a6 * real(B[6]) + a4 * real(B[4]) + a2 * real(B[2]) + id * real(B[0]);
    (u, v)
}
