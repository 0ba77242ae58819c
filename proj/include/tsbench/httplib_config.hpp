#pragma once

// Every TU must include httplib through this header so the OpenSSL define
// (and with it the class layout) stays consistent across the build.
#ifdef TSBENCH_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
