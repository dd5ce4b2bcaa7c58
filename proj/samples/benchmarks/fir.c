/* Integer FIR filter over a synthetic signal, with a built-in self-test.
 * usage: fir [loop-count]; exits 0 when the checksum is correct. */

#include <stdint.h>
#include <stdlib.h>

#define SIGLEN 2048
#define NTAPS 10

static const int32_t taps[NTAPS] = {3, -1, 4, 1, -5, 9, 2, -6, 5, 3};

static uint32_t fir_checksum(const int32_t *signal, size_t len) {
  uint32_t acc = 0;
  for (size_t i = NTAPS - 1; i < len; ++i) {
    int64_t s = 0;
    for (size_t k = 0; k < NTAPS; ++k)
      s += (int64_t)taps[k] * signal[i - k];
    acc += (uint32_t)(s & 0xFFFF);
  }
  return acc;
}

int main(int argc, char **argv) {
  long loops = argc > 1 ? strtol(argv[1], 0, 10) : 1;

  int32_t signal[SIGLEN];
  for (size_t i = 0; i < SIGLEN; ++i)
    signal[i] = (int32_t)((i * 7919u) % 256u) - 128;

  volatile uint32_t sink = 0;
  for (long i = 0; i < loops; ++i)
    sink = fir_checksum(signal, SIGLEN);
  return sink == 0x0372CD54u ? 0 : 1;
}
