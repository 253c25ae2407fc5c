/* tslint:disable */
/* eslint-disable */

export class Solution {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `[alpha1, alpha2, beta1, beta2, gamma]` of the power-of-two scaled input.
     */
    readonly arrow: Float64Array;
    /**
     * Zero-finder iterations for `[mu, nu]`; empty unless the secular path ran.
     */
    readonly iterations: Uint32Array;
    /**
     * Reference eigenvalues from tight-threshold Jacobi.
     */
    readonly oracle: Float64Array;
    readonly orth: number;
    readonly path: string;
    readonly resid: number;
    /**
     * Eigenvalues, descending.
     */
    readonly values: Float64Array;
    /**
     * Eigenvector matrix, row-major; column j belongs to `values[j]`.
     */
    readonly vectors: Float64Array;
}

export class Sweep {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Fraction of trials where the arrow solver is strictly better, `[orth, resid]`.
     */
    readonly better: Float64Array;
    /**
     * Sorted `baseline - arrow` orthogonality differences.
     */
    readonly orth: Float64Array;
    /**
     * Sorted `baseline - arrow` residual differences.
     */
    readonly resid: Float64Array;
    /**
     * Max and median of orth arrow, orth baseline, resid arrow, resid baseline.
     */
    readonly stats: Float64Array;
}

export class ZeroTrace {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Iterates of the rational method, starting point first.
     */
    readonly bg: Float64Array;
    /**
     * Spectral function at `xs`.
     */
    readonly fs: Float64Array;
    /**
     * Newton iterates, starting point first.
     */
    readonly newton: Float64Array;
    readonly root: number;
    /**
     * Sample abscissae on `(0, x_max]`.
     */
    readonly xs: Float64Array;
}

/**
 * Solves the symmetric matrix with upper triangle `a11 a12 a13 a22 a23 a33`.
 */
export function solve(upper: Float64Array, method: string): Solution;

/**
 * Runs `n` random trials from `uniform`, `normal` or `chisq` and compares
 * the arrow solver with the Jacobi baseline.
 */
export function sweep(dist: string, n: number, seed: number, method: string): Sweep;

/**
 * Samples the shifted spectral function for the largest (`right`) or
 * smallest (`left`) eigenvalue and records both zero finders' iterates.
 */
export function zeroTrace(upper: Float64Array, side: string, samples: number): ZeroTrace;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solution_free: (a: number, b: number) => void;
    readonly __wbg_sweep_free: (a: number, b: number) => void;
    readonly __wbg_zerotrace_free: (a: number, b: number) => void;
    readonly solution_arrow: (a: number) => [number, number];
    readonly solution_iterations: (a: number) => [number, number];
    readonly solution_oracle: (a: number) => [number, number];
    readonly solution_orth: (a: number) => number;
    readonly solution_path: (a: number) => [number, number];
    readonly solution_resid: (a: number) => number;
    readonly solution_values: (a: number) => [number, number];
    readonly solution_vectors: (a: number) => [number, number];
    readonly solve: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly sweep: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly sweep_better: (a: number) => [number, number];
    readonly sweep_orth: (a: number) => [number, number];
    readonly sweep_resid: (a: number) => [number, number];
    readonly sweep_stats: (a: number) => [number, number];
    readonly zeroTrace: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly zerotrace_bg: (a: number) => [number, number];
    readonly zerotrace_fs: (a: number) => [number, number];
    readonly zerotrace_newton: (a: number) => [number, number];
    readonly zerotrace_root: (a: number) => number;
    readonly zerotrace_xs: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
