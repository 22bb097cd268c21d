#ifndef CLOBBER_H
#define CLOBBER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ClobberColor {
  ClobberColor_White = 0,
  ClobberColor_Black = 1,
} ClobberColor;

typedef enum ClobberMode {
  ClobberMode_WhiteFirst = 0,
  ClobberMode_BlackFirst = 1,
  ClobberMode_Either = 2,
  ClobberMode_Free = 3,
} ClobberMode;

typedef enum ClobberStatus {
  ClobberStatus_Ok = 0,
  ClobberStatus_NullPointer = 1,
  ClobberStatus_InvalidUtf8 = 2,
  ClobberStatus_ParseError = 3,
  ClobberStatus_InvalidArgument = 4,
  ClobberStatus_IllegalMove = 5,
  ClobberStatus_NotAlternating = 6,
  ClobberStatus_LimitExceeded = 7,
  ClobberStatus_Internal = 8,
} ClobberStatus;

typedef struct ClobberBoard ClobberBoard;

typedef struct ClobberPlan ClobberPlan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. Owned by the library and
 * valid until the next failing call on the same thread.
 */
const char *clobber_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void clobber_string_free(char *s);

/**
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum ClobberStatus clobber_board_parse(const char *text, struct ClobberBoard **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClobberStatus clobber_board_checkerboard(int64_t rows,
                                              int64_t cols,
                                              struct ClobberBoard **out);

/**
 * # Safety
 * `board` must be null or a handle from this library, freed at most once.
 */
void clobber_board_free(struct ClobberBoard *board);

/**
 * Stone count, or 0 for a null handle.
 *
 * # Safety
 * `board` must be null or a live handle.
 */
size_t clobber_board_stones(const struct ClobberBoard *board);

/**
 * # Safety
 * `board` must be a live handle and `delta` a valid pointer.
 */
enum ClobberStatus clobber_board_delta(const struct ClobberBoard *board, size_t *delta);

/**
 * Board in file format; null for a null handle.
 *
 * # Safety
 * `board` must be null or a live handle.
 */
char *clobber_board_format(const struct ClobberBoard *board);

/**
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum ClobberStatus clobber_plan_parse(const char *text, struct ClobberPlan **out);

/**
 * # Safety
 * `plan` must be null or a handle from this library, freed at most once.
 */
void clobber_plan_free(struct ClobberPlan *plan);

/**
 * # Safety
 * `plan` must be null or a live handle.
 */
size_t clobber_plan_len(const struct ClobberPlan *plan);

/**
 * # Safety
 * `plan` must be null or a live handle.
 */
char *clobber_plan_format(const struct ClobberPlan *plan);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClobberStatus clobber_reduce_line(int64_t n,
                                       enum ClobberColor first,
                                       struct ClobberPlan **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClobberStatus clobber_reduce_rect(int64_t n, int64_t m, struct ClobberPlan **out);

/**
 * Replays `plan` on `board`, writing the number of stones left.
 *
 * # Safety
 * `board` and `plan` must be live handles and `final_stones` a valid
 * pointer.
 */
enum ClobberStatus clobber_replay(const struct ClobberBoard *board,
                                  const struct ClobberPlan *plan,
                                  bool alternating,
                                  size_t *final_stones);

/**
 * Exact minimum stone count. `limit` 0 selects the default limit; `jobs` 0
 * means one worker.
 *
 * # Safety
 * `board` must be a live handle and `min_stones` a valid pointer.
 */
enum ClobberStatus clobber_min_stones(const struct ClobberBoard *board,
                                      enum ClobberMode mode,
                                      size_t limit,
                                      size_t jobs,
                                      size_t *min_stones);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLOBBER_H */
