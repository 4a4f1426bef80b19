#ifndef SYNCREACH_H
#define SYNCREACH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum SrStatus {
  SR_STATUS_OK = 0,
  SR_STATUS_NULL_POINTER = 1,
  SR_STATUS_INVALID_UTF8 = 2,
  SR_STATUS_PARSE = 3,
  SR_STATUS_INVALID_ARGUMENT = 4,
  SR_STATUS_CAP_EXCEEDED = 5,
  SR_STATUS_INTERNAL = 6,
} SrStatus;

// Opaque automaton handle.
typedef struct SrDfa SrDfa;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer stays
// valid until the next call into the library from the same thread.
const char *sr_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed already.
void sr_string_free(char *s);

// Parses the text format into a new handle.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SrStatus sr_dfa_parse(const char *text, struct SrDfa **out);

// Builds a named automaton (`cerny`, `fig2`, `p2n`, `p3n`, `fig5`, `bv`).
// `n == 0` selects the family's default size.
//
// # Safety
// `family` must be a nul-terminated string and `out` a valid pointer.
enum SrStatus sr_dfa_generate(const char *family, size_t n, struct SrDfa **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `dfa` must come from this library and not have been freed already.
void sr_dfa_free(struct SrDfa *dfa);

// Number of states, or 0 for a null handle.
//
// # Safety
// `dfa` must be a live handle or null.
size_t sr_dfa_num_states(const struct SrDfa *dfa);

// Number of letters, or 0 for a null handle.
//
// # Safety
// `dfa` must be a live handle or null.
size_t sr_dfa_num_letters(const struct SrDfa *dfa);

// Text serialization; free the result with `sr_string_free`.
//
// # Safety
// `dfa` must be a live handle and `out` a valid pointer.
enum SrStatus sr_dfa_serialize(const struct SrDfa *dfa, char **out);

// Graphviz rendering; free the result with `sr_string_free`.
//
// # Safety
// `dfa` must be a live handle and `out` a valid pointer.
enum SrStatus sr_dfa_to_dot(const struct SrDfa *dfa, char **out);

// Shortest synchronizing word. `cap == 0` uses the default frontier cap.
// `word` and `len` may be null; a returned word must be freed.
//
// # Safety
// `dfa` must be a live handle and `found` a valid pointer.
enum SrStatus sr_shortest_sync_word(const struct SrDfa *dfa,
                                    size_t cap,
                                    bool *found,
                                    char **word,
                                    size_t *len);

// Shortest word `w` with `Qw` equal to the target (or contained in it when
// `into` is set). Bit `i` of `target` stands for state `i + 1`.
//
// # Safety
// `dfa` must be a live handle and `found` a valid pointer.
enum SrStatus sr_shortest_reaching_word(const struct SrDfa *dfa,
                                        uint64_t target,
                                        bool into,
                                        size_t cap,
                                        bool *found,
                                        char **word,
                                        size_t *len);

// Complete reachability. When the answer is negative and `missing` is not
// null, it receives the smallest unreachable subset as a bit mask.
//
// # Safety
// `dfa` must be a live handle and `out` a valid pointer.
enum SrStatus sr_is_completely_reachable(const struct SrDfa *dfa,
                                         size_t cap,
                                         bool *out,
                                         uint64_t *missing);

// Strong connectivity of the graph of rank-`n - 1` words.
// `cap == 0` uses the default closure cap.
//
// # Safety
// `dfa` must be a live handle and `out` a valid pointer.
enum SrStatus sr_gamma1_strongly_connected(const struct SrDfa *dfa, size_t cap, bool *out);

// Number of subsets of size `k` whose shortest word exceeds `n(n - k)`.
// With `included` set, words landing inside the subset count too.
//
// # Safety
// `dfa` must be a live handle and `count` a valid pointer.
enum SrStatus sr_don_violations(const struct SrDfa *dfa, bool included, size_t cap, size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYNCREACH_H */
