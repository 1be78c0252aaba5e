/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demoembedding_free: (a: number, b: number) => void;
export const comparisonCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demoembedding_comparisons: (a: number) => number;
export const demoembedding_cost: (a: number) => number;
export const demoembedding_flipCount: (a: number) => number;
export const demoembedding_flips: (a: number) => [number, number];
export const demoembedding_msgBits: (a: number) => number;
export const demoembedding_stego: (a: number) => [number, number];
export const embedText: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const extractText: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const syntheticImage: (a: number, b: number, c: number) => [number, number];
export const workedExample: () => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
