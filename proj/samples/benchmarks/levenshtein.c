/* Levenshtein distance micro-benchmark with a built-in self-test.
 * usage: levenshtein [loop-count]; exits 0 when the result is correct. */

#include <stdlib.h>
#include <string.h>

#define MAXLEN 64

static int lev(const char *a, const char *b) {
  int prev[MAXLEN + 1];
  int cur[MAXLEN + 1];
  size_t la = strlen(a), lb = strlen(b);
  for (size_t j = 0; j <= lb; ++j)
    prev[j] = (int)j;
  for (size_t i = 1; i <= la; ++i) {
    cur[0] = (int)i;
    for (size_t j = 1; j <= lb; ++j) {
      int del = prev[j] + 1;
      int ins = cur[j - 1] + 1;
      int sub = prev[j - 1] + (a[i - 1] != b[j - 1]);
      int best = del < ins ? del : ins;
      cur[j] = best < sub ? best : sub;
    }
    memcpy(prev, cur, sizeof(int) * (lb + 1));
  }
  return prev[lb];
}

int main(int argc, char **argv) {
  long loops = argc > 1 ? strtol(argv[1], 0, 10) : 1;
  volatile int sink = 0;
  for (long i = 0; i < loops; ++i)
    sink = lev("prefix-exploration-benchmark-corpus-alpha",
               "prefix-exploitation-benchmark-suite-omega");
  return sink == 12 ? 0 : 1;
}
