package com.acme.files;

public class FileService {
    static String loadEntry(String requestedPath, String parentPath) {
        if (PathGuard.isInsideParent(requestedPath, parentPath)) {
            return requestedPath;
        }
        return "";
    }
}
