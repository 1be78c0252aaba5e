/* tslint:disable */
/* eslint-disable */

/**
 * Result of hiding a text message in an image.
 */
export class DemoEmbedding {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly comparisons: number;
    readonly cost: number;
    readonly flipCount: number;
    /**
     * 1 where the least significant bit was flipped.
     */
    readonly flips: Uint8Array;
    readonly msgBits: number;
    readonly stego: Uint8Array;
}

export function comparisonCurve(sizes: Uint32Array, rate: number, seed: number): Float64Array;

export function embedText(width: number, height: number, pixels: Uint8Array, text: string): DemoEmbedding;

export function extractText(width: number, height: number, pixels: Uint8Array, msg_bits: number): string;

export function syntheticImage(width: number, height: number, seed: number): Uint8Array;

export function workedExample(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demoembedding_free: (a: number, b: number) => void;
    readonly comparisonCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demoembedding_comparisons: (a: number) => number;
    readonly demoembedding_cost: (a: number) => number;
    readonly demoembedding_flipCount: (a: number) => number;
    readonly demoembedding_flips: (a: number) => [number, number];
    readonly demoembedding_msgBits: (a: number) => number;
    readonly demoembedding_stego: (a: number) => [number, number];
    readonly embedText: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly extractText: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly syntheticImage: (a: number, b: number, c: number) => [number, number];
    readonly workedExample: () => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
