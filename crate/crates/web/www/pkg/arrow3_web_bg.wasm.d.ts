/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solution_free: (a: number, b: number) => void;
export const __wbg_sweep_free: (a: number, b: number) => void;
export const __wbg_zerotrace_free: (a: number, b: number) => void;
export const solution_arrow: (a: number) => [number, number];
export const solution_iterations: (a: number) => [number, number];
export const solution_oracle: (a: number) => [number, number];
export const solution_orth: (a: number) => number;
export const solution_path: (a: number) => [number, number];
export const solution_resid: (a: number) => number;
export const solution_values: (a: number) => [number, number];
export const solution_vectors: (a: number) => [number, number];
export const solve: (a: number, b: number, c: number, d: number) => [number, number, number];
export const sweep: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const sweep_better: (a: number) => [number, number];
export const sweep_orth: (a: number) => [number, number];
export const sweep_resid: (a: number) => [number, number];
export const sweep_stats: (a: number) => [number, number];
export const zeroTrace: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const zerotrace_bg: (a: number) => [number, number];
export const zerotrace_fs: (a: number) => [number, number];
export const zerotrace_newton: (a: number) => [number, number];
export const zerotrace_root: (a: number) => number;
export const zerotrace_xs: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
