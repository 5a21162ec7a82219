/** Conversions between concordance probabilities and Kendall's tau.
 *
 * For an index set of cardinality m: (2^(m-1) - 1) tau = 2^(m-1) kappa - 1.
 * Pairs reduce to tau = 2 kappa - 1.  The server speaks kappa; the grid
 * displays tau.
 */

export function kappaToTau(kappa: number, m: number): number {
  const half = 2 ** (m - 1);
  return (half * kappa - 1) / (half - 1);
}

export function tauToKappa(tau: number, m: number): number {
  const half = 2 ** (m - 1);
  return ((half - 1) * tau + 1) / half;
}

export function tauLowerBound(m: number): number {
  return -1 / (2 ** (m - 1) - 1);
}

/** Display rounding used across the grid (3 decimals). */
export function display(x: number): string {
  return x.toFixed(3);
}

export function displayPrecision(): number {
  return 5e-4;
}
