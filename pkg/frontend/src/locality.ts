// Client-side mirror of the server's locality rule, so no request is ever
// sent that the server would reject.

export type LocalityKind = "ell" | "window";

export interface Locality {
  kind: LocalityKind;
  k: number;
}

export function diffPositions(a: readonly number[], b: readonly number[]): number[] {
  const out: number[] = [];
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) out.push(i);
  }
  return out;
}

/** Whether moving from guess `a` to guess `b` is a legal step. */
export function stepIsLocal(a: readonly number[], b: readonly number[], locality: Locality): boolean {
  const d = diffPositions(a, b);
  if (d.length === 0) return true;
  if (locality.kind === "ell") return d.length <= locality.k;
  return d[d.length - 1] - d[0] <= locality.k - 1;
}

export function swapped(arr: readonly number[], i: number, j: number): number[] {
  const out = arr.slice();
  [out[i], out[j]] = [out[j], out[i]];
  return out;
}

/**
 * Whether swapping positions i, j of the staged arrangement keeps the staged
 * guess a legal step from the last submitted guess.  With no last guess the
 * first guess is unrestricted.
 */
export function swapStaysLocal(
  last: readonly number[] | null,
  staged: readonly number[],
  i: number,
  j: number,
  locality: Locality,
): boolean {
  if (last === null) return true;
  return stepIsLocal(last, swapped(staged, i, j), locality);
}

/** Positions j such that swapping (i, j) would still be submittable. */
export function legalSwapTargets(
  last: readonly number[] | null,
  staged: readonly number[],
  i: number,
  locality: Locality,
): number[] {
  const out: number[] = [];
  for (let j = 0; j < staged.length; j++) {
    if (j !== i && swapStaysLocal(last, staged, i, j, locality)) out.push(j);
  }
  return out;
}
