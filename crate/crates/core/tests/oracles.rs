//! Values checked against independent computations that do not go through
//! the library's code paths.

use boole_core::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Boole sum of t^k on [0,1] written out by hand.
fn boole_monomial_unit(k: u32) -> Rational {
    let nodes = [r(0, 1), r(1, 4), r(1, 2), r(3, 4), r(1, 1)];
    let weights = [7, 32, 12, 32, 7];
    let sum: Rational = nodes.iter().zip(weights).map(|(x, w)| r(w, 1) * x.pow(k)).sum();
    sum / r(90, 1)
}

#[test]
fn boole_monomials_by_hand() {
    assert_eq!(boole_monomial_unit(4), r(1, 5));
    assert_eq!(boole_monomial_unit(6), r(55, 384));
    for k in 0..=12u32 {
        assert_eq!(
            boole_exact(&Polynomial::monomial(k as usize), &Interval::unit()),
            boole_monomial_unit(k)
        );
        // power rule
        let exact = r(1, k as i64 + 1);
        assert_eq!(boole_monomial_unit(k) == exact, k <= 5, "k = {k}");
    }
}

/// Kernel piece on [0,1] from a brute-force integral of the Peano kernel
/// definition: the rule error applied to the truncated power (x − t)₊ⁿ / n!,
/// with the sign that makes ∫K·f⁽ⁿ⁾ = ±(Boole − ∫).
fn peano_kernel_value(order: u32, t: &Rational) -> Rational {
    let nodes = [r(0, 1), r(1, 4), r(1, 2), r(3, 4), r(1, 1)];
    let weights = [7, 32, 12, 32, 7];
    let n = order;
    let n_fact: i64 = (1..=n as i64).product();
    // rule applied to x -> (x - t)_+^(n-1) / (n-1)!
    let trunc = |x: &Rational| -> Rational {
        if x > t {
            (x - t).pow(n - 1) / r((1..n as i64).product::<i64>().max(1), 1)
        } else {
            Rational::zero()
        }
    };
    let rule: Rational = nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| r(w, 1) * trunc(x))
        .sum::<Rational>()
        / r(90, 1);
    // exact integral of (x - t)^(n-1)/(n-1)! over [t, 1]
    let integral = (r(1, 1) - t).pow(n) / r(n_fact, 1);
    let sign = if n % 2 == 1 { r(1, 1) } else { r(-1, 1) };
    sign * (rule - integral)
}

#[test]
fn kernels_match_truncated_power_definition() {
    for order in KernelOrder::ALL {
        let k = closed_form_kernel(order, &Interval::unit());
        for j in 0..=40 {
            let t = r(j, 40);
            // right-continuous at the breakpoints in the truncated-power form,
            // so compare in the open cells only
            if j % 10 == 0 {
                continue;
            }
            assert_eq!(
                k.eval(&t).unwrap(),
                peano_kernel_value(order.get(), &t),
                "order {order}, t = {t}"
            );
        }
    }
}

/// sup|K| by dense exact sampling; a lower bound that must approach the
/// certified value.
#[test]
fn sup_constants_by_dense_sampling() {
    let expected = [r(11, 60), r(17, 1440), r(1, 1620)];
    for (order, exact) in KernelOrder::ALL.into_iter().zip(expected) {
        let k = closed_form_kernel(order, &Interval::unit());
        let sampled = (0..=3600)
            .map(|j| k.eval(&r(j, 3600)).unwrap().abs())
            .max()
            .unwrap();
        assert!(sampled <= exact);
        // every extremum is at a multiple of 1/3600 except order 3's
        // outer ones, which do not set the maximum
        assert_eq!(sampled, exact, "order {order}");
        assert_eq!(kernel_sup_abs(&k).unwrap().overall, exact);
    }
}

/// Crossover scan written directly from the printed table and the
/// classical formula, without the library's study functions.
#[test]
fn crossover_by_direct_scan() {
    let classical = |k: i64| -> Rational {
        if k < 6 {
            return Rational::zero();
        }
        r((0..6).map(|j| k - j).product(), 1935360)
    };
    let table: [fn(i64) -> Rational; 6] = [
        |_| r(11, 6),
        |k| r(11 * (k - 1), 6),
        |k| r(17 * k, 1440),
        |k| r(17 * k * (k - 2), 1440),
        |k| r(k * (k - 1), 1620),
        |k| r(k * (k - 1) * (k - 3), 1620),
    ];
    let theorem: [fn(i64) -> Rational; 2] = [|_| r(11, 60), |k| r(11 * (k - 1), 60)];
    let first = |f: &dyn Fn(i64) -> Rational| (6..200).find(|&k| f(k) < classical(k)).unwrap() as u32;

    let expected_table = [15, 24, 11, 16, 10, 15];
    for (i, id) in EstimateId::ALL.into_iter().enumerate() {
        assert_eq!(first(&table[i]), expected_table[i]);
        assert_eq!(
            crossover_threshold(id, &Rational::one(), Reading::Table).unwrap(),
            expected_table[i]
        );
    }
    assert_eq!(first(&theorem[0]), 12);
    assert_eq!(first(&theorem[1]), 16);
    for (i, id) in EstimateId::ALL.into_iter().enumerate() {
        let want = if i < 2 {
            first(&theorem[i])
        } else {
            expected_table[i]
        };
        assert_eq!(
            crossover_threshold(id, &Rational::one(), Reading::Theorem).unwrap(),
            want
        );
    }
    // every row scales with b^(k+1), so thresholds do not depend on b
    for b in [r(2, 1), r(1, 3), r(7, 5)] {
        for (i, id) in EstimateId::ALL.into_iter().enumerate() {
            assert_eq!(
                crossover_threshold(id, &b, Reading::Table).unwrap(),
                expected_table[i]
            );
        }
    }
}

#[test]
fn t1_table_to_theorem_ratio_is_ten() {
    for b in [r(1, 1), r(3, 2)] {
        for k in 6..=30 {
            for id in [EstimateId::T1m, EstimateId::T1M] {
                let v = monomial_bound_value(id, k, &b).unwrap();
                assert_eq!(v.table_value, v.theorem_value * r(10, 1));
            }
            for id in [EstimateId::T2m, EstimateId::T2M, EstimateId::T3m, EstimateId::T3M] {
                let v = monomial_bound_value(id, k, &b).unwrap();
                assert_eq!(v.table_value, v.theorem_value);
            }
        }
    }
}
